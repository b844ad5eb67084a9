//! Triangle meshes: structured generators, uniform refinement, and the
//! face sets that drive multiplier stabilization.
//!
//! Meshes are immutable after construction. Triangles are oriented
//! counter-clockwise; edges are discovered from the triangle list and carry
//! a boundary tag (`None` for interior edges) plus their adjacent cells.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2<T> {
    /// Horizontal coordinate.
    pub x: T,
    /// Vertical coordinate.
    pub y: T,
}

impl<T: Real> Point2<T> {
    /// Creates a point from its coordinates.
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    /// Midpoint of the segment between `self` and `other`.
    pub fn midpoint(self, other: Self) -> Self {
        let half = T::cast(0.5);
        Self { x: (self.x + other.x) * half, y: (self.y + other.y) * half }
    }

    /// Euclidean distance to `other`.
    pub fn distance(self, other: Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Physical meaning of a boundary edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryTag {
    /// Prescribed displacement.
    Dirichlet,
    /// Natural (traction-free) boundary.
    Neumann,
    /// Candidate contact boundary.
    Contact,
}

/// Which variational problem a multiplier discretization serves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// Volume constraint: one multiplier per triangle.
    Obstacle,
    /// Boundary constraint: one multiplier per contact edge.
    Signorini,
}

/// An edge of the triangulation with its adjacency and boundary tag.
#[derive(Clone, Debug)]
pub struct Edge {
    /// Endpoint vertex indices, stored with the smaller index first.
    pub vertices: [usize; 2],
    /// Adjacent triangles; the second slot is `None` on the boundary.
    pub cells: [Option<usize>; 2],
    /// Boundary tag, or `None` for interior edges.
    pub tag: Option<BoundaryTag>,
}

impl Edge {
    /// Whether the edge lies on the domain boundary.
    pub fn is_boundary(&self) -> bool {
        self.cells[1].is_none()
    }
}

/// An interior face of the multiplier mesh: the interface between two
/// multiplier cells, with the geometric weights its jump penalty needs.
#[derive(Clone, Copy, Debug)]
pub struct Face<T> {
    /// The two multiplier cells sharing this face.
    pub cells: [usize; 2],
    /// Local mesh size associated with the face.
    pub h: T,
    /// Measure of the face (edge length, or 1 for junction points).
    pub measure: T,
}

/// The interior faces of a multiplier mesh.
#[derive(Clone, Debug, Default)]
pub struct FaceSet<T> {
    /// All interior faces.
    pub faces: Vec<Face<T>>,
}

impl<T> FaceSet<T> {
    /// Number of faces.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    /// Whether the set is empty.
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// A conforming triangulation of a planar domain.
#[derive(Clone, Debug)]
pub struct Mesh<T> {
    /// Vertex coordinates.
    pub vertices: Vec<Point2<T>>,
    /// Counter-clockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// Unique edges with adjacency and tags.
    pub edges: Vec<Edge>,
    /// For each triangle, the edge indices of (v0,v1), (v1,v2), (v2,v0).
    pub triangle_edges: Vec<[usize; 3]>,
}

impl<T: Real> Mesh<T> {
    /// Builds the edge tables from a raw triangle list. `tag_for` is called
    /// once per boundary edge with its endpoint vertex indices.
    fn build(
        vertices: Vec<Point2<T>>,
        triangles: Vec<[usize; 3]>,
        tag_for: impl Fn(&[Point2<T>], usize, usize) -> BoundaryTag,
    ) -> Self {
        let mut edge_index: HashMap<[usize; 2], usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut triangle_edges = Vec::with_capacity(triangles.len());
        for (cell, tri) in triangles.iter().enumerate() {
            let mut local = [0usize; 3];
            for (slot, (p, q)) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])]
                .into_iter()
                .enumerate()
            {
                let key = [p.min(q), p.max(q)];
                let e = *edge_index.entry(key).or_insert_with(|| {
                    edges.push(Edge { vertices: key, cells: [None, None], tag: None });
                    edges.len() - 1
                });
                let edge = &mut edges[e];
                if edge.cells[0].is_none() {
                    edge.cells[0] = Some(cell);
                } else {
                    debug_assert!(edge.cells[1].is_none(), "edge shared by more than two cells");
                    edge.cells[1] = Some(cell);
                }
                local[slot] = e;
            }
            triangle_edges.push(local);
        }
        for edge in &mut edges {
            if edge.is_boundary() {
                edge.tag = Some(tag_for(&vertices, edge.vertices[0], edge.vertices[1]));
            }
        }
        let mesh = Self { vertices, triangles, edges, triangle_edges };
        debug_assert!(mesh.triangles.iter().enumerate().all(|(k, _)| mesh.signed_area(k) > T::zero()));
        mesh
    }

    fn signed_area(&self, cell: usize) -> T {
        let [a, b, c] = self.triangle_points(cell);
        ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)) * T::cast(0.5)
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Number of triangles.
    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// Number of edges (interior and boundary).
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Coordinates of the three corners of triangle `cell`.
    pub fn triangle_points(&self, cell: usize) -> [Point2<T>; 3] {
        let [a, b, c] = self.triangles[cell];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Area of triangle `cell` (positive for the stored orientation).
    pub fn triangle_area(&self, cell: usize) -> T {
        self.signed_area(cell)
    }

    /// Length of edge `e`.
    pub fn edge_length(&self, e: usize) -> T {
        let [p, q] = self.edges[e].vertices;
        self.vertices[p].distance(self.vertices[q])
    }

    /// Sum of all triangle areas.
    pub fn total_area(&self) -> T {
        (0..self.num_triangles()).map(|k| self.triangle_area(k)).sum()
    }

    /// Mesh-size proxy `1/√(number of vertices)` used for reporting and
    /// for the mesh-dependent augmentation parameter.
    pub fn mesh_size(&self) -> T {
        T::one() / T::cast(self.num_vertices() as f64).sqrt()
    }

    /// Indices of Contact-tagged edges in ascending edge order. This is the
    /// canonical multiplier-cell ordering for boundary-contact problems.
    pub fn contact_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].tag == Some(BoundaryTag::Contact))
            .collect()
    }

    /// Splits every triangle into four by connecting edge midpoints.
    ///
    /// Parent vertices keep their indices; the midpoint of parent edge `e`
    /// becomes vertex `num_vertices() + e`. Boundary tags are inherited
    /// from the parent edge each child edge lies on, so the refined mesh is
    /// exactly nested in its parent.
    pub fn uniform_refine(&self) -> Mesh<T> {
        let nv = self.num_vertices();
        let mut vertices = self.vertices.clone();
        vertices.extend(self.edges.iter().map(|e| {
            self.vertices[e.vertices[0]].midpoint(self.vertices[e.vertices[1]])
        }));
        let mut triangles = Vec::with_capacity(4 * self.num_triangles());
        for (tri, edges) in self.triangles.iter().zip(&self.triangle_edges) {
            let [a, b, c] = *tri;
            let [m_ab, m_bc, m_ca] = edges.map(|e| nv + e);
            triangles.push([a, m_ab, m_ca]);
            triangles.push([b, m_bc, m_ab]);
            triangles.push([c, m_ca, m_bc]);
            triangles.push([m_ab, m_bc, m_ca]);
        }
        Mesh::build(vertices, triangles, |_, p, q| {
            // A boundary child edge joins a parent vertex to the midpoint of
            // the parent edge it lies on; recover that edge from the index.
            let midpoint = p.max(q);
            debug_assert!(midpoint >= nv && p.min(q) < nv);
            self.edges[midpoint - nv].tag.expect("child boundary edge on interior parent edge")
        })
    }

    /// Interior faces of the multiplier mesh for the given problem kind.
    ///
    /// For volume constraints these are the interior edges of the
    /// triangulation (face size and measure both the edge length). For
    /// boundary contact they are the junction vertices between consecutive
    /// contact edges, with unit measure and face size the mean of the two
    /// adjacent edge lengths. Fewer than two contact edges leave nothing to
    /// stabilize; that degenerate case yields an empty set with a warning.
    pub fn multiplier_faces(&self, kind: ProblemKind) -> FaceSet<T> {
        match kind {
            ProblemKind::Obstacle => {
                let faces = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_boundary())
                    .map(|(i, e)| {
                        let len = self.edge_length(i);
                        Face {
                            cells: [e.cells[0].unwrap(), e.cells[1].unwrap()],
                            h: len,
                            measure: len,
                        }
                    })
                    .collect();
                FaceSet { faces }
            }
            ProblemKind::Signorini => {
                let contact = self.contact_edges();
                if contact.len() < 2 {
                    log::warn!(
                        "fewer than two contact edges ({}): no multiplier faces to stabilize",
                        contact.len()
                    );
                    return FaceSet::default();
                }
                // Junction vertices are those shared by exactly two contact
                // edges; the multiplier cell index is the position in the
                // canonical contact-edge ordering.
                let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
                for (cell, &e) in contact.iter().enumerate() {
                    for &v in &self.edges[e].vertices {
                        incident.entry(v).or_default().push(cell);
                    }
                }
                let mut junctions: Vec<(usize, [usize; 2])> = incident
                    .into_iter()
                    .filter_map(|(v, cells)| match cells[..] {
                        [a, b] => Some((v, [a.min(b), a.max(b)])),
                        _ => None,
                    })
                    .collect();
                junctions.sort_unstable_by_key(|&(v, _)| v);
                let faces = junctions
                    .into_iter()
                    .map(|(_, cells)| {
                        let half = T::cast(0.5);
                        let h = (self.edge_length(contact[cells[0]])
                            + self.edge_length(contact[cells[1]]))
                            * half;
                        Face { cells, h, measure: T::one() }
                    })
                    .collect();
                FaceSet { faces }
            }
        }
    }

    /// Writes the mesh as plain text: a `NV NT NE` header, then one `x y`
    /// line per vertex, one `i j k` line per triangle, and one `i j tag`
    /// line per edge (tags D/N/C for boundary edges, I for interior).
    pub fn dump(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{} {} {}", self.num_vertices(), self.num_triangles(), self.num_edges())?;
        for p in &self.vertices {
            writeln!(out, "{} {}", p.x, p.y)?;
        }
        for t in &self.triangles {
            writeln!(out, "{} {} {}", t[0], t[1], t[2])?;
        }
        for e in &self.edges {
            let tag = match e.tag {
                Some(BoundaryTag::Dirichlet) => "D",
                Some(BoundaryTag::Neumann) => "N",
                Some(BoundaryTag::Contact) => "C",
                None => "I",
            };
            writeln!(out, "{} {} {}", e.vertices[0], e.vertices[1], tag)?;
        }
        Ok(())
    }
}

/// Interpolates vertex values from `parent` onto its uniform refinement.
///
/// Because the child mesh is nested, this reproduces the parent's piecewise
/// linear function exactly: parent vertices keep their values and each edge
/// midpoint takes the endpoint average.
pub fn prolong<T: Real>(parent: &Mesh<T>, child: &Mesh<T>, values: &[T]) -> Vec<T> {
    assert_eq!(values.len(), parent.num_vertices(), "values must match parent vertices");
    assert_eq!(
        child.num_vertices(),
        parent.num_vertices() + parent.num_edges(),
        "child is not the uniform refinement of parent"
    );
    let half = T::cast(0.5);
    let mut out = Vec::with_capacity(child.num_vertices());
    out.extend_from_slice(values);
    out.extend(
        parent.edges.iter().map(|e| (values[e.vertices[0]] + values[e.vertices[1]]) * half),
    );
    out
}

/// Structured criss-cross triangulation of the rectangle `[lo, hi]` with
/// `n` grid cells per side, each split along its lower-left to upper-right
/// diagonal. Boundary edges are tagged by `tagger`, which receives the edge
/// midpoint.
pub fn square_mesh<T: Real>(
    lo: Point2<T>,
    hi: Point2<T>,
    n: usize,
    tagger: impl Fn(Point2<T>) -> BoundaryTag,
) -> Result<Mesh<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("square_mesh requires n >= 1".into()));
    }
    if !(lo.x < hi.x && lo.y < hi.y) {
        return Err(Error::InvalidArgument("square_mesh requires lo < hi componentwise".into()));
    }
    let steps = T::cast(n as f64);
    let coord = |lo: T, hi: T, i: usize| {
        let t = T::cast(i as f64) / steps;
        lo + (hi - lo) * t
    };
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            vertices.push(Point2::new(coord(lo.x, hi.x, i), coord(lo.y, hi.y, j)));
        }
    }
    let vid = |i: usize, j: usize| j * (n + 1) + i;
    let mut triangles = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let (a, b, c, d) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Ok(Mesh::build(vertices, triangles, |vs, p, q| tagger(vs[p].midpoint(vs[q]))))
}

/// Structured triangulation of the L-shaped domain
/// `(−2,2)² ∖ [0,2)×(−2,0]` with `n` grid cells per unit length, so the
/// re-entrant corner at the origin is always a mesh vertex.
pub fn l_shaped_mesh<T: Real>(
    n: usize,
    tagger: impl Fn(Point2<T>) -> BoundaryTag,
) -> Result<Mesh<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("l_shaped_mesh requires n >= 1".into()));
    }
    let side = 4 * n; // grid cells across the enclosing square (−2,2)²
    let steps = T::cast(n as f64);
    let two = T::cast(2.0);
    let coord = |i: usize| T::cast(i as f64) / steps - two;
    // Keep every grid vertex except those strictly inside the removed
    // lower-right quadrant.
    let mut index = vec![None; (side + 1) * (side + 1)];
    let mut vertices = Vec::new();
    for j in 0..=side {
        for i in 0..=side {
            let removed = i > 2 * n && j < 2 * n;
            if !removed {
                index[j * (side + 1) + i] = Some(vertices.len());
                vertices.push(Point2::new(coord(i), coord(j)));
            }
        }
    }
    let vid = |i: usize, j: usize| index[j * (side + 1) + i].expect("vertex inside domain");
    let mut triangles = Vec::new();
    for j in 0..side {
        for i in 0..side {
            if i >= 2 * n && j < 2 * n {
                continue; // removed quadrant
            }
            let (a, b, c, d) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Ok(Mesh::build(vertices, triangles, |vs, p, q| tagger(vs[p].midpoint(vs[q]))))
}
