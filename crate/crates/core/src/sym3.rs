//! Dense 3x3 real-symmetric eigensolver.
//!
//! Cyclic Jacobi rotations; the eigenvector matrix is an accumulated product
//! of plane rotations and therefore orthogonal to rounding, which is what
//! makes the per-step propagator in [`crate::fock`] unitary by construction.

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors
/// (as rows, so `vectors[i]` belongs to `values[i]`).
#[derive(Debug, Clone, Copy)]
pub struct Eigh3 {
    pub values: [f64; 3],
    pub vectors: [[f64; 3]; 3],
}

/// Diagonalize a symmetric 3x3 matrix. Only the upper triangle is read.
pub fn eigh3(m: &[[f64; 3]; 3]) -> Eigh3 {
    let mut a = *m;
    // v accumulates rotations column-wise: column j of v is eigenvector j.
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    let norm = frobenius(&a);
    if norm == 0.0 {
        return Eigh3 {
            values: [0.0; 3],
            vectors: v,
        };
    }
    let tol = f64::EPSILON * norm;

    for _ in 0..30 {
        let off = (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2)).sqrt();
        if off <= tol {
            break;
        }
        for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq.abs() <= tol * 1e-2 {
                continue;
            }
            // Classic Jacobi rotation annihilating a[p][q].
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            let app = a[p][p];
            let aqq = a[q][q];
            a[p][p] = app - t * apq;
            a[q][q] = aqq + t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q; // the remaining index
            let arp = a[r.min(p)][r.max(p)];
            let arq = a[r.min(q)][r.max(q)];
            let new_rp = c * arp - s * arq;
            let new_rq = s * arp + c * arq;
            a[r.min(p)][r.max(p)] = new_rp;
            a[r.max(p)][r.min(p)] = new_rp;
            a[r.min(q)][r.max(q)] = new_rq;
            a[r.max(q)][r.min(q)] = new_rq;

            for row in &mut v {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let values = [a[order[0]][order[0]], a[order[1]][order[1]], a[order[2]][order[2]]];
    let vectors = [
        [v[0][order[0]], v[1][order[0]], v[2][order[0]]],
        [v[0][order[1]], v[1][order[1]], v[2][order[1]]],
        [v[0][order[2]], v[1][order[2]], v[2][order[2]]],
    ];
    Eigh3 { values, vectors }
}

/// Frobenius norm.
pub fn frobenius(m: &[[f64; 3]; 3]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

/// Residual `max_i ||M v_i - lambda_i v_i||` of an eigensystem.
pub fn residual(m: &[[f64; 3]; 3], eig: &Eigh3) -> f64 {
    let mut worst = 0.0f64;
    for (lambda, vec) in eig.values.iter().zip(eig.vectors.iter()) {
        let mut r = 0.0;
        for i in 0..3 {
            let mv: f64 = (0..3).map(|j| m[i][j] * vec[j]).sum();
            r += (mv - lambda * vec[i]).powi(2);
        }
        worst = worst.max(r.sqrt());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn diagonal_matrix_is_trivial() {
        let m = [[3.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]];
        let e = eigh3(&m);
        assert_eq!(e.values, [-1.0, 2.0, 3.0]);
    }

    #[test]
    fn zero_matrix() {
        let e = eigh3(&[[0.0; 3]; 3]);
        assert_eq!(e.values, [0.0; 3]);
    }

    #[test]
    fn residual_and_orthogonality() {
        let m = [[1.0, 0.5, -0.3], [0.5, 2.0, 0.7], [-0.3, 0.7, -1.5]];
        let e = eigh3(&m);
        assert!(residual(&m, &e) <= 1e-13 * frobenius(&m));
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(&e.vectors[i], &e.vectors[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d - expect).abs() < 1e-14, "({i},{j}): {d}");
            }
        }
        assert!(e.values[0] <= e.values[1] && e.values[1] <= e.values[2]);
    }

    #[test]
    fn near_degenerate_pair_still_accurate() {
        let m = [[1.0, 1e-9, 0.0], [1e-9, 1.0, 1e-9], [0.0, 1e-9, 5.0]];
        let e = eigh3(&m);
        assert!(residual(&m, &e) <= 1e-12 * frobenius(&m));
    }

    #[test]
    fn trace_preserved() {
        let m = [[0.0, 0.4, 0.0], [0.4, 1.3e-2, 0.9], [0.0, 0.9, 1.3e-2]];
        let e = eigh3(&m);
        let tr = m[0][0] + m[1][1] + m[2][2];
        let sum: f64 = e.values.iter().sum();
        assert!((sum - tr).abs() <= 1e-14 * frobenius(&m).max(1.0));
    }
}
