//! Fixed quadrature rules on reference triangles and segments.
//!
//! Triangle points are stored in barycentric coordinates with weights
//! normalized to sum to one, so a physical integral is `|K| · Σ wᵢ f(xᵢ)`;
//! segment points live on `[0, 1]` with the same convention. Both rules use
//! positive weights and strictly interior points, which the contact terms
//! rely on (point values of singular loads are never taken on cell
//! boundaries or at domain corners).

use crate::scalar::Real;

/// A pair of quadrature rules: one for triangles, one for segments.
#[derive(Clone, Debug)]
pub struct QuadratureRule<T> {
    /// Largest polynomial degree integrated exactly by the triangle rule.
    pub order: usize,
    /// Triangle points as (barycentric coordinates, weight), weights summing to 1.
    pub triangle: Vec<([T; 3], T)>,
    /// Segment points as (coordinate in [0,1], weight), weights summing to 1.
    pub segment: Vec<(T, T)>,
}

impl<T: Real> QuadratureRule<T> {
    /// Degree-4 rule used for assembly: 6-point triangle rule, 3-point
    /// Gauss segments (degree 5 on edges).
    pub fn assembly() -> Self {
        let c = T::cast;
        // Two symmetric orbits of the classical 6-point degree-4 rule.
        let a = 0.445_948_490_915_965;
        let wa = 0.223_381_589_678_011;
        let b = 0.091_576_213_509_771;
        let wb = 0.109_951_743_655_322;
        let triangle = [(a, wa), (b, wb)]
            .iter()
            .flat_map(|&(p, w)| orbit3(p).map(move |bary| (bary, w)))
            .map(|(bary, w)| (bary.map(c), c(w)))
            .collect();
        let g = (0.6f64).sqrt(); // Gauss node √(3/5) on [−1,1]
        let segment = vec![
            (c(0.5 * (1.0 - g)), c(5.0 / 18.0)),
            (c(0.5), c(8.0 / 18.0)),
            (c(0.5 * (1.0 + g)), c(5.0 / 18.0)),
        ];
        Self { order: 4, triangle, segment }
    }

    /// Degree-5 rule used for error integration: 7-point triangle rule,
    /// 4-point Gauss segments (degree 7 on edges).
    pub fn errors() -> Self {
        let c = T::cast;
        let s15 = 15f64.sqrt();
        let a = (6.0 + s15) / 21.0;
        let wa = (155.0 + s15) / 1200.0;
        let b = (6.0 - s15) / 21.0;
        let wb = (155.0 - s15) / 1200.0;
        let mut triangle = vec![([c(1.0 / 3.0); 3], c(9.0 / 40.0))];
        triangle.extend(
            [(a, wa), (b, wb)]
                .iter()
                .flat_map(|&(p, w)| orbit3(p).map(move |bary| (bary, w)))
                .map(|(bary, w)| (bary.map(c), c(w))),
        );
        let g1 = ((3.0 - 2.0 * (1.2f64).sqrt()) / 7.0).sqrt();
        let g2 = ((3.0 + 2.0 * (1.2f64).sqrt()) / 7.0).sqrt();
        let w1 = (18.0 + 30f64.sqrt()) / 72.0;
        let w2 = (18.0 - 30f64.sqrt()) / 72.0;
        let segment = vec![
            (c(0.5 * (1.0 - g2)), c(w2)),
            (c(0.5 * (1.0 - g1)), c(w1)),
            (c(0.5 * (1.0 + g1)), c(w1)),
            (c(0.5 * (1.0 + g2)), c(w2)),
        ];
        Self { order: 5, triangle, segment }
    }
}

/// The three cyclic permutations of the barycentric point `(p, p, 1−2p)`.
fn orbit3(p: f64) -> impl Iterator<Item = [f64; 3]> {
    let q = 1.0 - 2.0 * p;
    [[p, p, q], [p, q, p], [q, p, p]].into_iter()
}
