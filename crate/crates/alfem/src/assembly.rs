//! Assembly of the bilinear forms into sparse matrices and vectors: the
//! Laplace stiffness, the load with Dirichlet lifting, the primal–multiplier
//! coupling, the multiplier jump stabilization, and the quadrature tables
//! used by the nonlinear contact terms.

use crate::error::{Error, Result};
use crate::mesh::{Mesh, Point2, ProblemKind};
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;
use crate::sparse::{CsrMatrix, Triplets};
use crate::spaces::{MultiplierSpace, PrimalSpace};

/// Element stiffness matrix of the Laplacian for a P1 triangle with the
/// given (counter-clockwise) corner points: entries `|K| ∇φ_i · ∇φ_j` from
/// exact integration of the constant gradients.
pub fn element_stiffness<T: Real>(p: [Point2<T>; 3]) -> [[T; 3]; 3] {
    let area2 = (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[2].x - p[0].x) * (p[1].y - p[0].y);
    // ∇φ_i = rot90(p_k − p_j) / (2|K|) for (i,j,k) cyclic.
    let grads = [
        Point2::new(p[1].y - p[2].y, p[2].x - p[1].x),
        Point2::new(p[2].y - p[0].y, p[0].x - p[2].x),
        Point2::new(p[0].y - p[1].y, p[1].x - p[0].x),
    ];
    let scale = T::one() / (area2 + area2);
    let mut k = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = (grads[i].x * grads[j].x + grads[i].y * grads[j].y) * scale;
        }
    }
    k
}

fn check_triangle<T: Real>(mesh: &Mesh<T>, cell: usize) -> Result<()> {
    let area = mesh.triangle_area(cell);
    if area.is_nan() || area <= T::zero() {
        return Err(Error::Assembly(format!("degenerate triangle {cell}")));
    }
    Ok(())
}

/// Assembles the stiffness matrix `(∇u, ∇v)` over the free primal DOFs.
pub fn assemble_stiffness<T: Real>(
    mesh: &Mesh<T>,
    sp: &PrimalSpace<T>,
) -> Result<CsrMatrix<T>> {
    let n = sp.num_free();
    let mut triplets = Triplets::new(n, n);
    for cell in 0..mesh.num_triangles() {
        check_triangle(mesh, cell)?;
        let local = element_stiffness(mesh.triangle_points(cell));
        let dofs = mesh.triangles[cell].map(|v| sp.dof_of_vertex[v]);
        for i in 0..3 {
            let Some(di) = dofs[i] else { continue };
            for j in 0..3 {
                if let Some(dj) = dofs[j] {
                    triplets.push(di, dj, local[i][j]);
                }
            }
        }
    }
    Ok(triplets.into_csr())
}

/// Assembles the load vector `(f, v)` over the free primal DOFs, shifted by
/// the stiffness action of the Dirichlet lift stored in the space, so that
/// the linear system over free DOFs sees inhomogeneous boundary data.
pub fn assemble_load<T: Real>(
    mesh: &Mesh<T>,
    sp: &PrimalSpace<T>,
    f: impl Fn(Point2<T>) -> T,
    quad: &QuadratureRule<T>,
) -> Result<Vec<T>> {
    let mut load = vec![T::zero(); sp.num_free()];
    for cell in 0..mesh.num_triangles() {
        check_triangle(mesh, cell)?;
        let points = mesh.triangle_points(cell);
        let area = mesh.triangle_area(cell);
        let verts = mesh.triangles[cell];
        let mut local = [T::zero(); 3];
        for &(bary, w) in &quad.triangle {
            let x = Point2::new(
                bary[0] * points[0].x + bary[1] * points[1].x + bary[2] * points[2].x,
                bary[0] * points[0].y + bary[1] * points[1].y + bary[2] * points[2].y,
            );
            let fw = f(x) * w * area;
            for i in 0..3 {
                local[i] += fw * bary[i];
            }
        }
        let stiff = element_stiffness(points);
        for i in 0..3 {
            let Some(di) = sp.dof_of_vertex[verts[i]] else { continue };
            load[di] += local[i];
            for j in 0..3 {
                // Lift of prescribed values; zero at free vertices.
                load[di] -= stiff[i][j] * sp.dirichlet_values[verts[j]];
            }
        }
    }
    Ok(load)
}

/// Assembles the coupling matrix `B[i, j] = ∫_{K_j} φ_i` between free
/// primal DOFs (rows) and multiplier cells (columns); the integrals are the
/// exact P1/P0 pairings — a third of the triangle area, or half the edge
/// length for boundary traces.
pub fn coupling_matrix<T: Real>(
    mesh: &Mesh<T>,
    sp: &PrimalSpace<T>,
    ms: &MultiplierSpace<T>,
) -> CsrMatrix<T> {
    let mut triplets = Triplets::new(sp.num_free(), ms.num_dofs());
    let third = T::cast(1.0 / 3.0);
    let half = T::cast(0.5);
    for (j, &entity) in ms.cells.iter().enumerate() {
        match ms.kind {
            ProblemKind::Obstacle => {
                let weight = mesh.triangle_area(entity) * third;
                for v in mesh.triangles[entity] {
                    if let Some(dof) = sp.dof_of_vertex[v] {
                        triplets.push(dof, j, weight);
                    }
                }
            }
            ProblemKind::Signorini => {
                let weight = mesh.edge_length(entity) * half;
                for v in mesh.edges[entity].vertices {
                    if let Some(dof) = sp.dof_of_vertex[v] {
                        triplets.push(dof, j, weight);
                    }
                }
            }
        }
    }
    triplets.into_csr()
}

/// Assembles the jump-penalty stabilization `s(λ, μ)` over multiplier DOFs:
/// for each interior face between cells (K⁺, K⁻) the rank-one contribution
/// `δ·γ·h_F·|F|·(e⁺ − e⁻)(e⁺ − e⁻)ᵀ`. The result is symmetric positive
/// semidefinite with constants in its kernel.
pub fn assemble_stabilization<T: Real>(
    ms: &MultiplierSpace<T>,
    faces: &crate::mesh::FaceSet<T>,
    delta: T,
    gamma: T,
) -> CsrMatrix<T> {
    debug_assert!(delta >= T::zero() && gamma > T::zero());
    let m = ms.num_dofs();
    let mut triplets = Triplets::new(m, m);
    for face in &faces.faces {
        let [a, b] = face.cells;
        debug_assert!(a < m && b < m && a != b);
        let w = delta * gamma * face.h * face.measure;
        triplets.push(a, a, w);
        triplets.push(b, b, w);
        triplets.push(a, b, -w);
        triplets.push(b, a, -w);
    }
    triplets.into_csr()
}

/// One quadrature point of a contact cell, with everything needed to
/// evaluate the primal trace there and scatter contributions back.
#[derive(Clone, Debug)]
pub struct ContactQuadPoint<T> {
    /// Physical quadrature weight (cell measure folded in).
    pub weight: T,
    /// Contribution of prescribed Dirichlet values to the trace value.
    pub fixed_part: T,
    /// Free-DOF basis values: `(dof, φ_dof(x_q))` pairs.
    pub free: Vec<(usize, T)>,
}

impl<T: Real> ContactQuadPoint<T> {
    /// Value of the primal iterate at this point (Dirichlet data included).
    pub fn trace_value(&self, u: &[T]) -> T {
        self.free.iter().fold(self.fixed_part, |acc, &(dof, phi)| acc + phi * u[dof])
    }
}

/// Quadrature table of one multiplier cell.
#[derive(Clone, Debug)]
pub struct ContactCell<T> {
    /// Quadrature points covering the cell; weights sum to its measure.
    pub points: Vec<ContactQuadPoint<T>>,
}

/// Everything assembled once per mesh level: spaces, linear operators, and
/// the contact quadrature tables, with the augmentation and stabilization
/// parameters frozen at build time.
#[derive(Clone, Debug)]
pub struct DiscreteSystem<T> {
    /// Primal space (free DOFs and Dirichlet data).
    pub primal: PrimalSpace<T>,
    /// Multiplier space (one DOF per contact cell).
    pub multiplier: MultiplierSpace<T>,
    /// Stiffness matrix over free DOFs.
    pub stiffness: CsrMatrix<T>,
    /// Load vector over free DOFs, Dirichlet lift included.
    pub load: Vec<T>,
    /// Coupling matrix (free × multiplier).
    pub coupling: CsrMatrix<T>,
    /// Stabilization matrix (multiplier × multiplier), δγ folded in.
    pub stabilization: CsrMatrix<T>,
    /// Per-multiplier-cell quadrature tables for the nonlinear terms.
    pub contact_cells: Vec<ContactCell<T>>,
    /// Augmentation parameter γ this system was built with.
    pub gamma: T,
    /// Stabilization weight δ this system was built with.
    pub delta: T,
}

impl<T: Real> DiscreteSystem<T> {
    /// Total number of unknowns (free primal + multiplier DOFs).
    pub fn num_unknowns(&self) -> usize {
        self.primal.num_free() + self.multiplier.num_dofs()
    }
}

/// Assembles the complete discrete system for one mesh level. Call after
/// the primal space's Dirichlet values are set: both the load lift and the
/// contact tables freeze those values.
pub fn build_system<T: Real>(
    mesh: &Mesh<T>,
    primal: PrimalSpace<T>,
    multiplier: MultiplierSpace<T>,
    f: impl Fn(Point2<T>) -> T,
    quad: &QuadratureRule<T>,
    gamma: T,
    delta: T,
) -> Result<DiscreteSystem<T>> {
    if gamma.is_nan() || gamma <= T::zero() {
        return Err(Error::InvalidArgument("gamma must be positive".into()));
    }
    if delta < T::zero() {
        return Err(Error::InvalidArgument("delta must be nonnegative".into()));
    }
    let stiffness = assemble_stiffness(mesh, &primal)?;
    let load = assemble_load(mesh, &primal, f, quad)?;
    let coupling = coupling_matrix(mesh, &primal, &multiplier);
    let faces = mesh.multiplier_faces(multiplier.kind);
    let stabilization = assemble_stabilization(&multiplier, &faces, delta, gamma);
    let contact_cells = build_contact_cells(mesh, &primal, &multiplier, quad);
    Ok(DiscreteSystem {
        primal,
        multiplier,
        stiffness,
        load,
        coupling,
        stabilization,
        contact_cells,
        gamma,
        delta,
    })
}

fn build_contact_cells<T: Real>(
    mesh: &Mesh<T>,
    sp: &PrimalSpace<T>,
    ms: &MultiplierSpace<T>,
    quad: &QuadratureRule<T>,
) -> Vec<ContactCell<T>> {
    let mut cells = Vec::with_capacity(ms.num_dofs());
    for &entity in &ms.cells {
        let points = match ms.kind {
            ProblemKind::Obstacle => {
                let area = mesh.triangle_area(entity);
                let verts = mesh.triangles[entity];
                quad.triangle
                    .iter()
                    .map(|&(bary, w)| quad_point(sp, &verts, &bary, w * area))
                    .collect()
            }
            ProblemKind::Signorini => {
                let len = mesh.edge_length(entity);
                let verts = mesh.edges[entity].vertices;
                quad.segment
                    .iter()
                    .map(|&(t, w)| quad_point(sp, &verts, &[T::one() - t, t], w * len))
                    .collect()
            }
        };
        cells.push(ContactCell { points });
    }
    cells
}

fn quad_point<T: Real>(
    sp: &PrimalSpace<T>,
    verts: &[usize],
    basis: &[T],
    weight: T,
) -> ContactQuadPoint<T> {
    let mut fixed_part = T::zero();
    let mut free = Vec::with_capacity(verts.len());
    for (&v, &phi) in verts.iter().zip(basis) {
        match sp.dof_of_vertex[v] {
            Some(dof) => free.push((dof, phi)),
            None => fixed_part += phi * sp.dirichlet_values[v],
        }
    }
    ContactQuadPoint { weight, fixed_part, free }
}
