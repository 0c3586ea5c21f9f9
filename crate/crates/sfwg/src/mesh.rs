//! 2D meshes of convex polygons.
//!
//! A mesh stores vertex coordinates, element vertex cycles (counter-clockwise,
//! strictly convex), and an edge table inferred from the cycles. Every edge
//! bounds exactly one element (boundary) or two (interior). Per-element
//! geometry (centroid, area, diameter, per-edge length/tangent/normal) is
//! computed once at construction and cached.
//!
//! Conventions:
//! - Element cycles are counter-clockwise; the outward normal of an edge is
//!   the traversal tangent rotated by -90°.
//! - An edge's stored vertex pair fixes its global orientation (the traversal
//!   direction of the first element that visited it). [`ElementEdge::reversed`]
//!   tells whether an element walks the edge against that global direction.
//!   Edge-based degrees of freedom are always parameterized by the global
//!   direction so that the two incident elements agree without sign fixups.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Strict-convexity threshold on normalized cross products of consecutive
/// edge directions.
const CONVEXITY_TOL: f64 = 1e-14;
/// Two vertices closer than this (in both coordinates) are duplicates.
const DUP_VERTEX_TOL: f64 = 1e-12;
/// Two unit tangents with |cross| below this are parallel.
const PARALLEL_TOL: f64 = 1e-12;

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// An edge of the mesh with its incident elements.
#[derive(Clone, Debug)]
pub struct Edge {
    /// Endpoint vertex indices in global orientation order.
    pub vertices: [usize; 2],
    /// Element on whose traversal the edge was first seen.
    pub left: usize,
    /// Second incident element; `None` for boundary edges.
    pub right: Option<usize>,
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        self.right.is_none()
    }
}

/// One entry of an element's edge loop.
#[derive(Clone, Copy, Debug)]
pub struct ElementEdge {
    /// Global edge index.
    pub edge: usize,
    /// True when the element traverses the edge against its stored direction.
    pub reversed: bool,
}

/// Geometry of one edge as seen from one element.
#[derive(Clone, Copy, Debug)]
pub struct EdgeGeom {
    pub length: f64,
    /// Unit tangent along the element's (counter-clockwise) traversal.
    pub tangent: [f64; 2],
    /// Unit outward normal.
    pub normal: [f64; 2],
    /// Edge midpoint.
    pub midpoint: Point2,
}

/// Cached geometry of one element.
#[derive(Clone, Debug)]
pub struct ElementGeom {
    pub centroid: Point2,
    pub area: f64,
    /// Element diameter `h_T` (largest vertex-to-vertex distance).
    pub diameter: f64,
    /// Per-edge geometry in element-local edge order.
    pub edges: Vec<EdgeGeom>,
}

/// Shape-regularity summary of a mesh.
#[derive(Clone, Debug)]
pub struct ShapeReport {
    /// Largest edge count over all elements.
    pub m_max: usize,
    /// Largest max/min edge-length ratio within a single element.
    pub alpha: f64,
    /// Smallest interior angle (radians).
    pub theta_min: f64,
    /// Largest interior angle (radians).
    pub theta_max: f64,
    /// Per element: true when every edge is parallel to another edge of the
    /// same element.
    pub parallel_edges: Vec<bool>,
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("element {element} is not counter-clockwise strictly convex")]
    NonConvex { element: usize },
    #[error("element {element} references vertex {index} out of range")]
    BadIndex { element: usize, index: usize },
    #[error("element {element} has fewer than 3 vertices")]
    TooFewVertices { element: usize },
    #[error("element {element} has a zero-length or repeated edge")]
    DegenerateEdge { element: usize },
    #[error("vertices {a} and {b} coincide")]
    DuplicateVertices { a: usize, b: usize },
    #[error("edge ({a}, {b}) is shared by more than two elements")]
    NonManifoldEdge { a: usize, b: usize },
    #[error("edge ({a}, {b}) is traversed in the same direction by two elements")]
    InconsistentOrientation { a: usize, b: usize },
    #[error("element {element} is not a triangle")]
    NotTriangle { element: usize },
}

/// A conforming mesh of convex polygons.
#[derive(Clone, Debug)]
pub struct Mesh {
    vertices: Vec<Point2>,
    elements: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    element_edges: Vec<Vec<ElementEdge>>,
    geoms: Vec<ElementGeom>,
}

impl Mesh {
    /// Build a mesh from vertex coordinates and counter-clockwise vertex
    /// cycles, validating convexity, orientation, and edge conformity.
    pub fn new(vertices: Vec<Point2>, elements: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        for (i, p) in vertices.iter().enumerate() {
            assert!(
                p.x.is_finite() && p.y.is_finite(),
                "vertex {i} has non-finite coordinates"
            );
        }
        check_duplicate_vertices(&vertices)?;

        for (t, cycle) in elements.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(MeshError::TooFewVertices { element: t });
            }
            for &v in cycle {
                if v >= vertices.len() {
                    return Err(MeshError::BadIndex { element: t, index: v });
                }
            }
            check_convex_ccw(&vertices, cycle, t)?;
        }

        let (edges, element_edges) = build_edges(&elements)?;
        let geoms = elements
            .iter()
            .map(|cycle| element_geometry(&vertices, cycle))
            .collect();

        Ok(Self {
            vertices,
            elements,
            edges,
            element_edges,
            geoms,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_boundary_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.is_boundary()).count()
    }

    pub fn n_interior_edges(&self) -> usize {
        self.n_edges() - self.n_boundary_edges()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn element(&self, t: usize) -> &[usize] {
        &self.elements[t]
    }

    /// Vertex coordinates of element `t` in cycle order.
    pub fn element_points(&self, t: usize) -> Vec<Point2> {
        self.elements[t].iter().map(|&v| self.vertices[v]).collect()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge loop of element `t` (element-local order, matching the cycle).
    pub fn element_edges(&self, t: usize) -> &[ElementEdge] {
        &self.element_edges[t]
    }

    pub fn geom(&self, t: usize) -> &ElementGeom {
        &self.geoms[t]
    }

    /// Endpoints of edge `e` in global orientation order.
    pub fn edge_points(&self, e: usize) -> (Point2, Point2) {
        let [a, b] = self.edges[e].vertices;
        (self.vertices[a], self.vertices[b])
    }

    pub fn is_all_triangles(&self) -> bool {
        self.elements.iter().all(|c| c.len() == 3)
    }

    /// Largest element diameter.
    pub fn max_diameter(&self) -> f64 {
        self.geoms.iter().map(|g| g.diameter).fold(0.0, f64::max)
    }

    /// Uniform triangulation of the unit square: an `n × n` grid of squares
    /// of side `1/n`, each split by the diagonal from its lower-left to its
    /// upper-right corner. `2n²` triangles, `(n+1)²` vertices.
    pub fn uniform_triangles(n: usize) -> Mesh {
        assert!(n >= 1, "need at least one cell per side");
        let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                vertices.push(Point2::new(i as f64 / n as f64, j as f64 / n as f64));
            }
        }
        let idx = |i: usize, j: usize| j * (n + 1) + i;
        let mut elements = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for i in 0..n {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                elements.push(vec![a, b, c]);
                elements.push(vec![a, c, d]);
            }
        }
        Mesh::new(vertices, elements).expect("generated triangle mesh is valid")
    }

    /// Uniform quadrilateral mesh of the unit square: `n²` axis-aligned
    /// square cells of side `1/n`.
    pub fn uniform_quads(n: usize) -> Mesh {
        assert!(n >= 1, "need at least one cell per side");
        let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                vertices.push(Point2::new(i as f64 / n as f64, j as f64 / n as f64));
            }
        }
        let idx = |i: usize, j: usize| j * (n + 1) + i;
        let mut elements = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                elements.push(vec![idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            }
        }
        Mesh::new(vertices, elements).expect("generated quad mesh is valid")
    }

    /// Hexagon-dominant paving of the unit square: rows of brick-like cells
    /// whose shared horizontal interfaces zigzag, so interior rows consist of
    /// convex hexagons (with every edge parallel to the opposite one), capped
    /// by pentagons at the flat bottom/top and quadrilaterals at the sides of
    /// offset rows. `nx` cells per row, `ny` rows; hexagons appear for
    /// `ny ≥ 3`.
    pub fn hex_bricks(nx: usize, ny: usize) -> Mesh {
        assert!(nx >= 1 && ny >= 1, "need at least one cell per direction");
        let w = 1.0 / nx as f64;
        let hy = 1.0 / ny as f64;
        let delta = 0.25 * (0.5 * w).min(hy);

        // Vertex stations live at x = q·w/2 on interface lines r = 0..=ny.
        // Interior interfaces zigzag by ±delta with alternating parity.
        let station = |q: usize, r: usize| -> Point2 {
            let x = q as f64 * w / 2.0;
            let y = if r == 0 {
                0.0
            } else if r == ny {
                1.0
            } else if q % 2 == r % 2 {
                r as f64 * hy + delta
            } else {
                r as f64 * hy - delta
            };
            Point2::new(x, y)
        };

        let mut vertices: Vec<Point2> = Vec::new();
        let mut vertex_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut vert = |q: usize, r: usize, vertices: &mut Vec<Point2>| -> usize {
            *vertex_ids.entry((q, r)).or_insert_with(|| {
                vertices.push(station(q, r));
                vertices.len() - 1
            })
        };

        let mut elements: Vec<Vec<usize>> = Vec::new();
        for r in 0..ny {
            let bottom_flat = r == 0;
            let top_flat = r == ny - 1;
            // Station spans of this row's cells: full cells cover three
            // stations (left, midpoint, right); offset rows add two-station
            // half cells at the domain sides.
            let mut spans: Vec<(usize, usize)> = Vec::new();
            if r % 2 == 0 {
                for c in 0..nx {
                    spans.push((2 * c, 2 * c + 2));
                }
            } else {
                spans.push((0, 1));
                for c in 0..nx.saturating_sub(1) {
                    spans.push((2 * c + 1, 2 * c + 3));
                }
                spans.push((2 * nx - 1, 2 * nx));
            }
            for (ql, qr) in spans {
                let mut cycle = Vec::new();
                // Bottom boundary, left to right. Flat caps skip the midpoint
                // station (the zigzag apex exists only on interior interfaces).
                if bottom_flat {
                    for q in [ql, qr] {
                        cycle.push(vert(q, r, &mut vertices));
                    }
                } else {
                    for q in ql..=qr {
                        cycle.push(vert(q, r, &mut vertices));
                    }
                }
                // Top boundary, right to left.
                if top_flat {
                    for q in [qr, ql] {
                        cycle.push(vert(q, ny, &mut vertices));
                    }
                } else {
                    for q in (ql..=qr).rev() {
                        cycle.push(vert(q, r + 1, &mut vertices));
                    }
                }
                elements.push(cycle);
            }
        }
        Mesh::new(vertices, elements).expect("generated hex paving is valid")
    }

    /// Split every triangle into four congruent children through its edge
    /// midpoints. Fails if any element is not a triangle.
    pub fn refine_uniform(&self) -> Result<Mesh, MeshError> {
        for (t, cycle) in self.elements.iter().enumerate() {
            if cycle.len() != 3 {
                return Err(MeshError::NotTriangle { element: t });
            }
        }
        let mut vertices = self.vertices.clone();
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Point2>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                let (pa, pb) = (vertices[key.0], vertices[key.1]);
                vertices.push(Point2::new(0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)));
                vertices.len() - 1
            })
        };
        let mut elements = Vec::with_capacity(4 * self.elements.len());
        for cycle in &self.elements {
            let (a, b, c) = (cycle[0], cycle[1], cycle[2]);
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            elements.push(vec![a, ab, ca]);
            elements.push(vec![ab, b, bc]);
            elements.push(vec![ca, bc, c]);
            elements.push(vec![ab, bc, ca]);
        }
        Mesh::new(vertices, elements)
    }

    /// Shape-regularity report: edge counts, edge-length ratios, interior
    /// angles, and per-element parallel-edge detection.
    pub fn shape_report(&self) -> ShapeReport {
        let mut m_max = 0;
        let mut alpha: f64 = 1.0;
        let mut theta_min = f64::INFINITY;
        let mut theta_max: f64 = 0.0;
        let mut parallel_edges = Vec::with_capacity(self.n_elements());

        for (t, cycle) in self.elements.iter().enumerate() {
            let m = cycle.len();
            m_max = m_max.max(m);
            let geom = &self.geoms[t];
            let lengths: Vec<f64> = geom.edges.iter().map(|e| e.length).collect();
            let lmax = lengths.iter().cloned().fold(0.0, f64::max);
            let lmin = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
            alpha = alpha.max(lmax / lmin);

            for i in 0..m {
                let v = self.vertices[cycle[i]];
                let prev = self.vertices[cycle[(i + m - 1) % m]];
                let next = self.vertices[cycle[(i + 1) % m]];
                let d1 = [prev.x - v.x, prev.y - v.y];
                let d2 = [next.x - v.x, next.y - v.y];
                let cosang = (d1[0] * d2[0] + d1[1] * d2[1])
                    / ((d1[0].hypot(d1[1])) * (d2[0].hypot(d2[1])));
                let theta = cosang.clamp(-1.0, 1.0).acos();
                theta_min = theta_min.min(theta);
                theta_max = theta_max.max(theta);
            }

            let all_paired = (0..m).all(|i| {
                (0..m).any(|jj| {
                    jj != i && {
                        let ti = geom.edges[i].tangent;
                        let tj = geom.edges[jj].tangent;
                        (ti[0] * tj[1] - ti[1] * tj[0]).abs() < PARALLEL_TOL
                    }
                })
            });
            parallel_edges.push(all_paired);
        }

        ShapeReport {
            m_max,
            alpha,
            theta_min,
            theta_max,
            parallel_edges,
        }
    }
}

fn check_duplicate_vertices(vertices: &[Point2]) -> Result<(), MeshError> {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| {
        vertices[a]
            .x
            .partial_cmp(&vertices[b].x)
            .unwrap()
            .then(vertices[a].y.partial_cmp(&vertices[b].y).unwrap())
    });
    for (rank, &a) in order.iter().enumerate() {
        for &b in order[rank + 1..].iter() {
            if vertices[b].x - vertices[a].x > DUP_VERTEX_TOL {
                break;
            }
            if (vertices[b].y - vertices[a].y).abs() <= DUP_VERTEX_TOL {
                return Err(MeshError::DuplicateVertices { a: a.min(b), b: a.max(b) });
            }
        }
    }
    Ok(())
}

fn check_convex_ccw(vertices: &[Point2], cycle: &[usize], t: usize) -> Result<(), MeshError> {
    let m = cycle.len();
    for i in 0..m {
        let p0 = vertices[cycle[i]];
        let p1 = vertices[cycle[(i + 1) % m]];
        let p2 = vertices[cycle[(i + 2) % m]];
        let d1 = [p1.x - p0.x, p1.y - p0.y];
        let d2 = [p2.x - p1.x, p2.y - p1.y];
        let l1 = d1[0].hypot(d1[1]);
        let l2 = d2[0].hypot(d2[1]);
        if l1 == 0.0 || l2 == 0.0 {
            return Err(MeshError::DegenerateEdge { element: t });
        }
        let cross = (d1[0] * d2[1] - d1[1] * d2[0]) / (l1 * l2);
        if !(cross > CONVEXITY_TOL) {
            return Err(MeshError::NonConvex { element: t });
        }
    }
    Ok(())
}

fn build_edges(elements: &[Vec<usize>]) -> Result<(Vec<Edge>, Vec<Vec<ElementEdge>>), MeshError> {
    let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut element_edges: Vec<Vec<ElementEdge>> = Vec::with_capacity(elements.len());

    for (t, cycle) in elements.iter().enumerate() {
        let m = cycle.len();
        let mut loop_edges = Vec::with_capacity(m);
        for i in 0..m {
            let a = cycle[i];
            let b = cycle[(i + 1) % m];
            if a == b {
                return Err(MeshError::DegenerateEdge { element: t });
            }
            let key = (a.min(b), a.max(b));
            match edge_ids.get(&key) {
                None => {
                    let id = edges.len();
                    edge_ids.insert(key, id);
                    edges.push(Edge {
                        vertices: [a, b],
                        left: t,
                        right: None,
                    });
                    loop_edges.push(ElementEdge { edge: id, reversed: false });
                }
                Some(&id) => {
                    if edges[id].right.is_some() {
                        return Err(MeshError::NonManifoldEdge { a: key.0, b: key.1 });
                    }
                    if edges[id].vertices == [a, b] {
                        // A conforming orientable mesh traverses a shared
                        // edge in opposite directions from its two sides.
                        return Err(MeshError::InconsistentOrientation { a: key.0, b: key.1 });
                    }
                    edges[id].right = Some(t);
                    loop_edges.push(ElementEdge { edge: id, reversed: true });
                }
            }
        }
        element_edges.push(loop_edges);
    }
    Ok((edges, element_edges))
}

fn element_geometry(vertices: &[Point2], cycle: &[usize]) -> ElementGeom {
    let m = cycle.len();
    let pts: Vec<Point2> = cycle.iter().map(|&v| vertices[v]).collect();

    let mut twice_area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..m {
        let p = pts[i];
        let q = pts[(i + 1) % m];
        let w = p.x * q.y - q.x * p.y;
        twice_area += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    let area = 0.5 * twice_area;
    let centroid = Point2::new(cx / (3.0 * twice_area), cy / (3.0 * twice_area));

    let mut diameter = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            diameter = diameter.max(pts[i].dist(&pts[j]));
        }
    }

    let edges = (0..m)
        .map(|i| {
            let p = pts[i];
            let q = pts[(i + 1) % m];
            let length = p.dist(&q);
            let tangent = [(q.x - p.x) / length, (q.y - p.y) / length];
            EdgeGeom {
                length,
                tangent,
                normal: [tangent[1], -tangent[0]],
                midpoint: Point2::new(0.5 * (p.x + q.x), 0.5 * (p.y + q.y)),
            }
        })
        .collect();

    ElementGeom {
        centroid,
        area,
        diameter,
        edges,
    }
}

/// Parse the `polymesh 1` text format:
///
/// ```text
/// polymesh 1
/// vertices N
/// x y            (N lines)
/// elements M
/// c i0 i1 ... i(c-1)   (M lines, counter-clockwise, 0-based)
/// ```
///
/// `#` starts a comment; blank lines are ignored. Boundary edges are the
/// edges with a single incident element.
pub fn read_mesh(text: &str) -> Result<Mesh, MeshError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    });

    let parse_err = |line: usize, msg: &str| MeshError::Parse { line, msg: msg.to_string() };

    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if header != ["polymesh", "1"] {
        return Err(parse_err(line, "expected header `polymesh 1`"));
    }

    let (line, vh) = lines
        .next()
        .ok_or_else(|| parse_err(line, "expected `vertices N`"))?;
    if vh.len() != 2 || vh[0] != "vertices" {
        return Err(parse_err(line, "expected `vertices N`"));
    }
    let n_vertices: usize = vh[1]
        .parse()
        .map_err(|_| parse_err(line, "invalid vertex count"))?;

    let mut vertices = Vec::with_capacity(n_vertices);
    let mut last_line = line;
    for _ in 0..n_vertices {
        let (line, tok) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, "unexpected end of file in vertex list"))?;
        last_line = line;
        if tok.len() != 2 {
            return Err(parse_err(line, "expected `x y`"));
        }
        let x: f64 = tok[0].parse().map_err(|_| parse_err(line, "invalid x coordinate"))?;
        let y: f64 = tok[1].parse().map_err(|_| parse_err(line, "invalid y coordinate"))?;
        vertices.push(Point2::new(x, y));
    }

    let (line, eh) = lines
        .next()
        .ok_or_else(|| parse_err(last_line, "expected `elements M`"))?;
    if eh.len() != 2 || eh[0] != "elements" {
        return Err(parse_err(line, "expected `elements M`"));
    }
    let n_elements: usize = eh[1]
        .parse()
        .map_err(|_| parse_err(line, "invalid element count"))?;
    last_line = line;

    let mut elements = Vec::with_capacity(n_elements);
    for _ in 0..n_elements {
        let (line, tok) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, "unexpected end of file in element list"))?;
        last_line = line;
        let count: usize = tok[0]
            .parse()
            .map_err(|_| parse_err(line, "invalid element vertex count"))?;
        if tok.len() != count + 1 {
            return Err(parse_err(line, "element vertex count does not match line"));
        }
        let cycle: Result<Vec<usize>, _> = tok[1..].iter().map(|s| s.parse::<usize>()).collect();
        elements.push(cycle.map_err(|_| parse_err(line, "invalid vertex index"))?);
    }

    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected trailing content"));
    }

    Mesh::new(vertices, elements)
}

/// Serialize a mesh in the `polymesh 1` format. Coordinates are written with
/// shortest round-trip formatting, so `read_mesh(write_mesh(m))` reproduces
/// them exactly.
pub fn write_mesh(mesh: &Mesh) -> String {
    let mut out = String::new();
    out.push_str("polymesh 1\n");
    let _ = writeln!(out, "vertices {}", mesh.n_vertices());
    for p in mesh.vertices() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    let _ = writeln!(out, "elements {}", mesh.n_elements());
    for t in 0..mesh.n_elements() {
        let cycle = mesh.element(t);
        let _ = write!(out, "{}", cycle.len());
        for &v in cycle {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn total_area(mesh: &Mesh) -> f64 {
        (0..mesh.n_elements()).map(|t| mesh.geom(t).area).sum()
    }

    /// V - E + F = 2 with the unbounded face included.
    fn euler_characteristic(mesh: &Mesh) -> isize {
        mesh.n_vertices() as isize - mesh.n_edges() as isize + mesh.n_elements() as isize + 1
    }

    #[test]
    fn unit_triangle_mesh_counts() {
        let mesh = Mesh::uniform_triangles(1);
        assert_eq!(mesh.n_elements(), 2);
        assert_eq!(mesh.n_vertices(), 4);
        assert_eq!(mesh.n_edges(), 5);
        for t in 0..2 {
            assert_relative_eq!(mesh.geom(t).area, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn triangle_mesh_n2_counts() {
        let mesh = Mesh::uniform_triangles(2);
        assert_eq!(mesh.n_elements(), 8);
        assert_eq!(mesh.n_vertices(), 9);
        assert_eq!(mesh.n_edges(), 16);
        assert_eq!(mesh.n_boundary_edges(), 8);
        assert_eq!(euler_characteristic(&mesh), 2);
        assert_relative_eq!(total_area(&mesh), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn quad_mesh_counts() {
        let m1 = Mesh::uniform_quads(1);
        assert_eq!(m1.n_elements(), 1);
        assert_eq!(m1.n_edges(), 4);
        assert_eq!(m1.n_boundary_edges(), 4);

        let m2 = Mesh::uniform_quads(2);
        assert_eq!(m2.n_elements(), 4);
        assert_eq!(m2.n_vertices(), 9);
        assert_eq!(m2.n_edges(), 12);
        assert_eq!(m2.n_interior_edges(), 4);

        let report = Mesh::uniform_quads(3).shape_report();
        assert!(report.parallel_edges.iter().all(|&p| p));
        assert_relative_eq!(report.theta_min, PI / 2.0, epsilon = 1e-12);
        assert_relative_eq!(report.theta_max, PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn euler_and_area_for_generators() {
        for mesh in [
            Mesh::uniform_triangles(4),
            Mesh::uniform_quads(5),
            Mesh::hex_bricks(4, 4),
            Mesh::hex_bricks(3, 5),
        ] {
            assert_eq!(euler_characteristic(&mesh), 2);
            assert_relative_eq!(total_area(&mesh), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn normals_unit_outward_and_opposite() {
        let mesh = Mesh::hex_bricks(3, 3);
        for t in 0..mesh.n_elements() {
            let geom = mesh.geom(t);
            for eg in &geom.edges {
                assert_relative_eq!(eg.normal[0].hypot(eg.normal[1]), 1.0, epsilon = 1e-14);
                let toward = [
                    eg.midpoint.x - geom.centroid.x,
                    eg.midpoint.y - geom.centroid.y,
                ];
                assert!(eg.normal[0] * toward[0] + eg.normal[1] * toward[1] > 0.0);
            }
        }
        // Interior edges: the two incident elements see opposite normals.
        for e in 0..mesh.n_edges() {
            let edge = mesh.edge(e);
            if let Some(right) = edge.right {
                let find_normal = |t: usize| {
                    let i = mesh
                        .element_edges(t)
                        .iter()
                        .position(|le| le.edge == e)
                        .unwrap();
                    mesh.geom(t).edges[i].normal
                };
                let nl = find_normal(edge.left);
                let nr = find_normal(right);
                assert_relative_eq!(nl[0] * nr[0] + nl[1] * nr[1], -1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn refine_splits_triangles_in_four() {
        let mesh = Mesh::uniform_triangles(1);
        let fine = mesh.refine_uniform().unwrap();
        assert_eq!(fine.n_elements(), 8);
        assert_relative_eq!(total_area(&fine), total_area(&mesh), epsilon = 1e-13);
        // Children have a quarter of the parent area and half its diameter.
        for c in 0..4 {
            assert_relative_eq!(fine.geom(c).area, mesh.geom(0).area / 4.0, epsilon = 1e-14);
        }
        assert_relative_eq!(
            fine.max_diameter(),
            mesh.max_diameter() / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn refine_matches_finer_generator_vertex_set() {
        let refined = Mesh::uniform_triangles(3).refine_uniform().unwrap();
        let direct = Mesh::uniform_triangles(6);
        assert_eq!(refined.n_vertices(), direct.n_vertices());
        let key = |p: &Point2| ((p.x * 1e12).round() as i64, (p.y * 1e12).round() as i64);
        let mut a: Vec<_> = refined.vertices().iter().map(key).collect();
        let mut b: Vec<_> = direct.vertices().iter().map(key).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(refined.n_elements(), direct.n_elements());
        assert_eq!(refined.n_edges(), direct.n_edges());
    }

    #[test]
    fn refine_rejects_non_triangles() {
        let mesh = Mesh::uniform_quads(2);
        assert!(matches!(
            mesh.refine_uniform(),
            Err(MeshError::NotTriangle { .. })
        ));
    }

    #[test]
    fn shape_report_right_triangles() {
        let report = Mesh::uniform_triangles(4).shape_report();
        assert_eq!(report.m_max, 3);
        assert_relative_eq!(report.alpha, 2f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(report.theta_min, PI / 4.0, epsilon = 1e-12);
        assert_relative_eq!(report.theta_max, PI / 2.0, epsilon = 1e-12);
        assert!(report.parallel_edges.iter().all(|&p| !p));
    }

    #[test]
    fn shape_report_regular_hexagon() {
        let pts: Vec<Point2> = (0..6)
            .map(|i| {
                let a = PI / 3.0 * i as f64;
                Point2::new(0.5 + 0.3 * a.cos(), 0.5 + 0.3 * a.sin())
            })
            .collect();
        let mesh = Mesh::new(pts, vec![vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let report = mesh.shape_report();
        assert_eq!(report.m_max, 6);
        assert!(report.parallel_edges[0]);
        assert_relative_eq!(report.alpha, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hex_bricks_contains_parallel_hexagons() {
        let mesh = Mesh::hex_bricks(4, 4);
        let report = mesh.shape_report();
        assert_eq!(report.m_max, 6);
        let hexes: Vec<usize> = (0..mesh.n_elements())
            .filter(|&t| mesh.element(t).len() == 6)
            .collect();
        assert!(!hexes.is_empty());
        for t in hexes {
            assert!(report.parallel_edges[t]);
        }
    }

    #[test]
    fn polymesh_round_trip() {
        let mesh = Mesh::uniform_triangles(2);
        let text = write_mesh(&mesh);
        let back = read_mesh(&text).unwrap();
        assert_eq!(back.n_vertices(), mesh.n_vertices());
        assert_eq!(back.n_elements(), mesh.n_elements());
        assert_eq!(back.n_edges(), mesh.n_edges());
        for (p, q) in mesh.vertices().iter().zip(back.vertices()) {
            assert_eq!(p.x, q.x);
            assert_eq!(p.y, q.y);
        }
    }

    #[test]
    fn polymesh_single_triangle() {
        let text = "polymesh 1\n# a comment\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 1 2\n";
        let mesh = read_mesh(text).unwrap();
        assert_eq!(mesh.n_elements(), 1);
        assert_eq!(mesh.n_boundary_edges(), 3);
    }

    #[test]
    fn polymesh_rejects_clockwise_element() {
        let text = "polymesh 1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 2 1\n";
        assert!(matches!(read_mesh(text), Err(MeshError::NonConvex { .. })));
    }

    #[test]
    fn polymesh_rejects_dangling_index() {
        let text = "polymesh 1\nvertices 3\n0 0\n1 0\n0 1\nelements 1\n3 0 1 7\n";
        assert!(matches!(read_mesh(text), Err(MeshError::BadIndex { .. })));
    }

    #[test]
    fn polymesh_parse_error_carries_line() {
        let text = "polymesh 1\nvertices 2\n0 0\nnot-a-number 1\n";
        match read_mesh(text) {
            Err(MeshError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_vertices_rejected() {
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1e-13, 1e-14),
        ];
        assert!(matches!(
            Mesh::new(pts, vec![vec![0, 1, 2]]),
            Err(MeshError::DuplicateVertices { .. })
        ));
    }
}
