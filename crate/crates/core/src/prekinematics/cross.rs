use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Determinant layout of the product of `n` vectors in (n+1)-space, with the
/// basis row placed last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedCross {
    pub vectors: Vec<Vec<f64>>,
    pub basis_labels: Vec<String>,
    /// Cofactor expansion along the basis row.
    pub components: Vec<f64>,
}

impl GeneralizedCross {
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    /// All n+1 rows as text cells; the last row holds the basis labels.
    pub fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| format!("{x:e}")).collect())
            .collect();
        rows.push(self.basis_labels.clone());
        rows
    }

    /// The n=2 result as a plain 3-vector.
    pub fn cross3(&self) -> Option<[f64; 3]> {
        match self.components.as_slice() {
            [a, b, c] => Some([*a, *b, *c]),
            _ => None,
        }
    }
}

pub fn generalized_cross_matrix(
    vectors: &[Vec<f64>],
    basis_labels: &[String],
) -> Result<GeneralizedCross> {
    let n = vectors.len();
    if n < 2 {
        return Err(Error::ShapeMismatch(format!(
            "need at least 2 vectors, got {n}"
        )));
    }
    if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != n + 1) {
        return Err(Error::ShapeMismatch(format!(
            "vector {i} has length {}, expected {}",
            v.len(),
            n + 1
        )));
    }
    if basis_labels.len() != n + 1 {
        return Err(Error::ShapeMismatch(format!(
            "{} basis labels for {} columns",
            basis_labels.len(),
            n + 1
        )));
    }
    if vectors.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("cross matrix entry"));
    }
    let components = (0..=n)
        .map(|j| {
            let minor = DMatrix::from_fn(n, n, |r, c| {
                let col = if c < j { c } else { c + 1 };
                vectors[r][col]
            });
            let sign = if (n + j).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * minor.determinant()
        })
        .collect();
    Ok(GeneralizedCross {
        vectors: vectors.to_vec(),
        basis_labels: basis_labels.to_vec(),
        components,
    })
}

/// Labels `e1 .. e{n+1}`.
pub fn default_basis(n_plus_one: usize) -> Vec<String> {
    (1..=n_plus_one).map(|i| format!("e{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        generalized_cross_matrix(&[a.to_vec(), b.to_vec()], &default_basis(3))
            .unwrap()
            .cross3()
            .unwrap()
    }

    #[test]
    fn basis_identity() {
        assert_eq!(cross([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn matches_standard_cross_product() {
        let a = [1.0, 2.0, 3.0];
        let b = [4.0, 5.0, 6.0];
        let r = cross(a, b);
        let expected = [-3.0, 6.0, -3.0];
        for i in 0..3 {
            assert!((r[i] - expected[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn swap_negates() {
        let a = [0.3, -1.2, 2.0];
        let b = [1.5, 0.25, -0.75];
        let ab = cross(a, b);
        let ba = cross(b, a);
        for i in 0..3 {
            assert_eq!(ab[i], -ba[i]);
        }
    }

    #[test]
    fn n3_is_orthogonal() {
        let v = vec![
            vec![1.0, 0.0, 2.0, -1.0],
            vec![0.5, 3.0, 0.0, 1.0],
            vec![2.0, 1.0, 1.0, 0.0],
        ];
        let g = generalized_cross_matrix(&v, &default_basis(4)).unwrap();
        for row in &v {
            let dot: f64 = row.iter().zip(&g.components).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn basis_row_is_last() {
        let labels: Vec<String> = ["(1,0)", "..", "(1,1)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let v = vec![
            vec![0.1120981784101945, 0.0, 3.67682711749147e-7],
            vec![0.0, 0.1120981784101945, 3.67682711749147e-7],
        ];
        let g = generalized_cross_matrix(&v, &labels).unwrap();
        let rows = g.rows();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2], labels);
        assert!(rows[0][0].starts_with("1.12098"));
        assert!(rows[0][2].starts_with("3.67682"));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            generalized_cross_matrix(&[vec![1.0, 0.0, 0.0]], &default_basis(2)),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            generalized_cross_matrix(&[vec![1.0, 0.0], vec![0.0, 1.0]], &default_basis(3)),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            generalized_cross_matrix(
                &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
                &default_basis(2)
            ),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
