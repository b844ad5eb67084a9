//! Degree-of-freedom management for the continuous piecewise-linear primal
//! space (with strong Dirichlet elimination) and the piecewise-constant
//! multiplier space on the contact region.

use crate::error::{Error, Result};
use crate::mesh::{BoundaryTag, Mesh, Point2, ProblemKind};
use crate::scalar::Real;

/// The primal P1 space: one DOF per vertex not constrained by a Dirichlet
/// edge. Constrained vertices carry prescribed values that are lifted into
/// the load during assembly, so the algebraic system stays at fixed size.
#[derive(Clone, Debug)]
pub struct PrimalSpace<T> {
    /// Vertex index of each free DOF.
    pub free_dofs: Vec<usize>,
    /// Free-DOF index of each vertex, or `None` if constrained.
    pub dof_of_vertex: Vec<Option<usize>>,
    /// Prescribed value per vertex; zero at free vertices.
    pub dirichlet_values: Vec<T>,
}

impl<T: Real> PrimalSpace<T> {
    /// Number of free DOFs.
    pub fn num_free(&self) -> usize {
        self.free_dofs.len()
    }

    /// Number of vertices (free plus constrained).
    pub fn num_vertices(&self) -> usize {
        self.dof_of_vertex.len()
    }

    /// Whether vertex `v` carries a free DOF.
    pub fn is_free(&self, v: usize) -> bool {
        self.dof_of_vertex[v].is_some()
    }

    /// Sets prescribed values at the constrained vertices from a boundary
    /// datum; free vertices keep value zero.
    pub fn set_dirichlet_values(&mut self, mesh: &Mesh<T>, g: impl Fn(Point2<T>) -> T) {
        for v in 0..self.num_vertices() {
            if !self.is_free(v) {
                self.dirichlet_values[v] = g(mesh.vertices[v]);
            }
        }
    }

    /// Expands free-DOF coefficients to a per-vertex value vector, filling
    /// constrained vertices with their prescribed values.
    pub fn vertex_values(&self, coeffs: &[T]) -> Vec<T> {
        assert_eq!(coeffs.len(), self.num_free(), "coefficient vector size mismatch");
        (0..self.num_vertices())
            .map(|v| match self.dof_of_vertex[v] {
                Some(dof) => coeffs[dof],
                None => self.dirichlet_values[v],
            })
            .collect()
    }
}

/// The piecewise-constant multiplier space: one DOF per multiplier cell —
/// every triangle for obstacle problems, every contact edge for Signorini.
#[derive(Clone, Debug)]
pub struct MultiplierSpace<T> {
    /// Which problem kind the cells discretize.
    pub kind: ProblemKind,
    /// Mesh entity index per cell: triangle index (obstacle) or edge index
    /// (Signorini), in canonical ascending order.
    pub cells: Vec<usize>,
    /// Cell measures: triangle area or edge length.
    pub measures: Vec<T>,
}

impl<T: Real> MultiplierSpace<T> {
    /// Number of multiplier DOFs.
    pub fn num_dofs(&self) -> usize {
        self.cells.len()
    }
}

/// Builds the primal space over `mesh`, constraining every vertex that lies
/// on an edge tagged `dirichlet_tag`. Prescribed values start at zero; see
/// [`PrimalSpace::set_dirichlet_values`] for inhomogeneous data.
pub fn build_primal_space<T: Real>(
    mesh: &Mesh<T>,
    dirichlet_tag: BoundaryTag,
) -> Result<PrimalSpace<T>> {
    let nv = mesh.num_vertices();
    let mut constrained = vec![false; nv];
    for edge in &mesh.edges {
        if edge.tag == Some(dirichlet_tag) {
            for &v in &edge.vertices {
                constrained[v] = true;
            }
        }
    }
    let mut free_dofs = Vec::new();
    let mut dof_of_vertex = vec![None; nv];
    for v in 0..nv {
        if !constrained[v] {
            dof_of_vertex[v] = Some(free_dofs.len());
            free_dofs.push(v);
        }
    }
    if free_dofs.is_empty() {
        return Err(Error::InvalidProblem("every vertex is Dirichlet-constrained".into()));
    }
    Ok(PrimalSpace { free_dofs, dof_of_vertex, dirichlet_values: vec![T::zero(); nv] })
}

/// Builds the multiplier space for the given problem kind.
pub fn build_multiplier_space<T: Real>(
    mesh: &Mesh<T>,
    kind: ProblemKind,
) -> Result<MultiplierSpace<T>> {
    match kind {
        ProblemKind::Obstacle => {
            let cells: Vec<usize> = (0..mesh.num_triangles()).collect();
            let measures = cells.iter().map(|&k| mesh.triangle_area(k)).collect();
            Ok(MultiplierSpace { kind, cells, measures })
        }
        ProblemKind::Signorini => {
            let cells = mesh.contact_edges();
            if cells.is_empty() {
                return Err(Error::InvalidProblem("no contact edges for multiplier space".into()));
            }
            let measures = cells.iter().map(|&e| mesh.edge_length(e)).collect();
            Ok(MultiplierSpace { kind, cells, measures })
        }
    }
}
