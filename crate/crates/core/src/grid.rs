//! The algebraic map `x = L·cot(s)` and the node families on `(0, π)`.
//!
//! Output nodes are `s_j = (2j+1)π/(2N)`, `j = 0..N`. The quadrature splits
//! `[0, π]` into `2rN` cells of width `h_r = π/(2rN)` whose midpoints are
//! `s̃_{n+1/2} = (2n+1)π/(4rN)`. Cell boundary `(2j+1)r` sits exactly on `s_j`,
//! so every sign of a node difference is decided in integer arithmetic by
//! [`index_sign`].

use std::f64::consts::PI;

use crate::{Error, Result};

/// Discretization record: `N` output nodes, refinement `r`, map scale `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    r: usize,
    scale: f64,
    h: f64,
}

impl GridSpec {
    pub fn new(n: usize, r: usize, scale: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("N", "must be at least 1"));
        }
        if r == 0 {
            return Err(Error::param("r", "must be at least 1"));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::param("L", format!("must be positive and finite, got {scale}")));
        }
        // The spectral path transforms 4rN points and the kernels use signed
        // index differences of the same magnitude.
        let quad = n
            .checked_mul(r)
            .and_then(|rn| rn.checked_mul(4))
            .filter(|&v| i64::try_from(v).is_ok())
            .ok_or_else(|| Error::IndexOverflow(format!("4·r·N with N = {n}, r = {r}")))?;
        let cells = quad / 2;
        Ok(Self {
            n,
            r,
            scale,
            h: PI / cells as f64,
        })
    }

    /// Number of output nodes `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Refinement factor `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Map scale `L`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Cell width `h_r = π/(2rN)`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of quadrature cells, `2rN`.
    pub fn cells(&self) -> usize {
        2 * self.r * self.n
    }

    /// `s_j` for a single index.
    pub fn output_node(&self, j: usize) -> f64 {
        (2 * j + 1) as f64 * PI / (2 * self.n) as f64
    }

    /// Cell boundary `s̃_n = nπ/(2rN)`.
    pub fn cell_edge(&self, n: usize) -> f64 {
        n as f64 * PI / self.cells() as f64
    }

    /// Cell midpoint `s̃_{n+1/2} = (2n+1)π/(4rN)`.
    pub fn midpoint(&self, n: usize) -> f64 {
        (2 * n + 1) as f64 * PI / (2 * self.cells()) as f64
    }

    /// Physical coordinates `x_j = L·cot(s_j)` of the output nodes.
    pub fn output_points(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.scale / self.output_node(j).tan())
            .collect()
    }
}

/// `s_j = (2j+1)π/(2N)` for `j = 0..N`.
pub fn output_nodes(g: &GridSpec) -> Vec<f64> {
    (0..g.n()).map(|j| g.output_node(j)).collect()
}

/// `s̃_{n+1/2}` for `n = 0..2rN`.
pub fn midpoint_nodes(g: &GridSpec) -> Vec<f64> {
    (0..g.cells()).map(|n| g.midpoint(n)).collect()
}

/// `x = L·cot(s)`, decreasing on `(0, π)`.
pub fn map_to_real(s: f64, scale: f64) -> Result<f64> {
    if !(s > 0.0 && s < PI) {
        return Err(Error::Domain {
            what: "s",
            value: s,
            domain: "(0, π)",
        });
    }
    Ok(scale / s.tan())
}

/// Inverse of [`map_to_real`]: `s = arccot(x/L)` on the branch `(0, π)`.
pub fn map_from_real(x: f64, scale: f64) -> f64 {
    scale.atan2(x)
}

/// `sgn(n − (2j+1)r)` in exact integer arithmetic, i.e. `sgn(s̃_n − s_j)`.
pub fn index_sign(n: i64, j: i64, r: i64) -> i8 {
    (n - (2 * j + 1) * r).signum() as i8
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::new(0, 1, 1.0).is_err());
        assert!(GridSpec::new(1, 0, 1.0).is_err());
        assert!(GridSpec::new(1, 1, 0.0).is_err());
        assert!(GridSpec::new(1, 1, f64::NAN).is_err());
        assert!(matches!(
            GridSpec::new(usize::MAX / 2, 4, 1.0),
            Err(Error::IndexOverflow(_))
        ));
    }

    #[test]
    fn output_node_examples() {
        let g1 = GridSpec::new(1, 1, 1.0).unwrap();
        assert_eq!(output_nodes(&g1), vec![PI / 2.0]);
        let g2 = GridSpec::new(2, 3, 1.0).unwrap();
        assert_eq!(output_nodes(&g2), vec![PI / 4.0, 3.0 * PI / 4.0]);
        let g4 = GridSpec::new(4, 1, 1.0).unwrap();
        assert_relative_eq!(output_nodes(&g4)[3], 7.0 * PI / 8.0, max_relative = 1e-16);
    }

    #[test]
    fn midpoint_examples() {
        let expected = [PI / 8.0, 3.0 * PI / 8.0, 5.0 * PI / 8.0, 7.0 * PI / 8.0];
        let a = midpoint_nodes(&GridSpec::new(1, 1, 1.0).unwrap());
        assert_eq!(a.len(), 2);
        assert_relative_eq!(a[0], PI / 4.0, max_relative = 1e-16);
        assert_relative_eq!(a[1], 3.0 * PI / 4.0, max_relative = 1e-16);
        for g in [GridSpec::new(2, 1, 1.0).unwrap(), GridSpec::new(1, 2, 1.0).unwrap()] {
            let m = midpoint_nodes(&g);
            assert_eq!(m.len(), 4);
            for (x, e) in m.iter().zip(expected) {
                assert_relative_eq!(*x, e, max_relative = 1e-16);
            }
        }
    }

    #[test]
    fn map_examples() {
        assert!(map_to_real(PI / 2.0, 1.0).unwrap().abs() < 1e-16);
        assert_relative_eq!(map_to_real(PI / 4.0, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(map_to_real(PI / 4.0, 2.1).unwrap(), 2.1, max_relative = 1e-15);
        assert!(map_to_real(0.0, 1.0).is_err());
        assert!(map_to_real(PI, 1.0).is_err());
        assert!(map_to_real(-0.5, 1.0).is_err());
    }

    #[test]
    fn map_round_trip_and_monotone() {
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let s = k as f64 * PI / 200.0;
            let x = map_to_real(s, 2.1).unwrap();
            assert!(x < prev);
            prev = x;
            assert_relative_eq!(map_from_real(x, 2.1), s, max_relative = 1e-14);
        }
    }

    #[test]
    fn index_sign_examples() {
        assert_eq!(index_sign(3, 1, 1), 0);
        assert_eq!(index_sign(2, 1, 1), -1);
        assert_eq!(index_sign(4, 1, 1), 1);
    }

    #[test]
    fn node_coincidence_with_cell_edges() {
        for n in [1usize, 2, 7, 16, 101] {
            for r in [1usize, 2, 3, 5, 64] {
                let g = GridSpec::new(n, r, 1.0).unwrap();
                for j in 0..n {
                    let edge = (2 * j + 1) * r;
                    assert_eq!(index_sign(edge as i64, j as i64, r as i64), 0);
                    let (a, b) = (g.cell_edge(edge), g.output_node(j));
                    assert!((a - b).abs() <= f64::EPSILON * b, "N={n} r={r} j={j}");
                }
            }
        }
    }

    #[test]
    fn output_nodes_symmetric() {
        let g = GridSpec::new(37, 1, 1.0).unwrap();
        let s = output_nodes(&g);
        for j in 0..37 {
            assert!((s[36 - j] - (PI - s[j])).abs() <= 4.0 * f64::EPSILON);
            assert!(s[j] > 0.0 && s[j] < PI);
        }
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn spacing_times_cells_is_pi() {
        for (n, r) in [(1, 1), (3, 7), (1024, 8), (10000019, 1)] {
            let g = GridSpec::new(n, r, 1.0).unwrap();
            assert!((g.h() * g.cells() as f64 - PI).abs() <= 2.0 * f64::EPSILON * PI);
        }
    }
}
