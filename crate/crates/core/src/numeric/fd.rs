//! Purely numerical geometry of `g_f` from samples of `f`, sharing nothing
//! with the symbolic pipeline beyond the metric layout.

pub type Mat3 = [[f64; 3]; 3];
/// `gamma[k][i][j] = Γ^k_ij`.
pub type Christoffel = [Mat3; 3];
/// `r[l][k][i][j] = R^l_kij`.
pub type Riemann = [[Mat3; 3]; 3];

fn shifted(p: [f64; 3], k: usize, d: f64) -> [f64; 3] {
    let mut q = p;
    q[k] += d;
    q
}

/// Central difference of `g` along coordinate `k`.
pub fn central<F: Fn([f64; 3]) -> f64>(g: &F, p: [f64; 3], k: usize, h: f64) -> f64 {
    (g(shifted(p, k, h)) - g(shifted(p, k, -h))) / (2.0 * h)
}

pub fn walker_matrix(f: f64, eps: f64) -> Mat3 {
    [[0.0, 0.0, 1.0], [0.0, eps, 0.0], [1.0, 0.0, f]]
}

/// Cofactor inverse; `None` for a singular matrix.
pub fn invert(m: &Mat3) -> Option<Mat3> {
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let det = m[0][0] * c(0, 0) + m[0][1] * c(0, 1) + m[0][2] * c(0, 2);
    if det == 0.0 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = c(j, i) / det;
        }
    }
    Some(inv)
}

/// `dg[k][i][j] = ∂_k g_ij` by central differences.
pub fn metric_derivatives<F: Fn([f64; 3]) -> f64>(f: &F, eps: f64, p: [f64; 3], h: f64) -> [Mat3; 3] {
    let mut dg = [[[0.0; 3]; 3]; 3];
    for (k, dk) in dg.iter_mut().enumerate() {
        let plus = walker_matrix(f(shifted(p, k, h)), eps);
        let minus = walker_matrix(f(shifted(p, k, -h)), eps);
        for i in 0..3 {
            for j in 0..3 {
                dk[i][j] = (plus[i][j] - minus[i][j]) / (2.0 * h);
            }
        }
    }
    dg
}

pub fn christoffel<F: Fn([f64; 3]) -> f64>(f: &F, eps: f64, p: [f64; 3], h: f64) -> Christoffel {
    let ginv = invert(&walker_matrix(f(p), eps)).expect("Walker metrics are nondegenerate");
    let dg = metric_derivatives(f, eps, p, h);
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                gk[i][j] = 0.5
                    * (0..3)
                        .map(|l| ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                        .sum::<f64>();
            }
        }
    }
    gamma
}

/// `R^l_kij = ∂_j Γ^l_ik - ∂_i Γ^l_jk + Γ^m_ik Γ^l_jm - Γ^m_jk Γ^l_im`, with
/// the Christoffel derivatives taken by differencing the finite-difference
/// Christoffels at step `outer` with the fourth-order five-point stencil.
pub fn riemann<F: Fn([f64; 3]) -> f64>(f: &F, eps: f64, p: [f64; 3], h: f64, outer: f64) -> Riemann {
    let gamma = christoffel(f, eps, p, h);
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for (n, dn) in dgamma.iter_mut().enumerate() {
        let at = |d: f64| christoffel(f, eps, shifted(p, n, d), h);
        let (p1, m1, p2, m2) = (at(outer), at(-outer), at(2.0 * outer), at(-2.0 * outer));
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    dn[k][i][j] =
                        (8.0 * (p1[k][i][j] - m1[k][i][j]) - (p2[k][i][j] - m2[k][i][j])) / (12.0 * outer);
                }
            }
        }
    }
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let quad: f64 = (0..3)
                        .map(|m| gamma[m][i][k] * gamma[l][j][m] - gamma[m][j][k] * gamma[l][i][m])
                        .sum();
                    r[l][k][i][j] = dgamma[j][l][i][k] - dgamma[i][l][j][k] + quad;
                }
            }
        }
    }
    r
}

/// `ρ_jk = R^i_kji`.
pub fn ricci(r: &Riemann) -> Mat3 {
    let mut rho = [[0.0; 3]; 3];
    for (j, row) in rho.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            *v = (0..3).map(|i| r[i][k][j][i]).sum();
        }
    }
    rho
}

/// `(L_X g)_ij = X^k ∂_k g_ij + g_kj ∂_i X^k + g_ik ∂_j X^k`.
pub fn lie_derivative<F, X>(f: &F, field: &[X; 3], eps: f64, p: [f64; 3], h: f64) -> Mat3
where
    F: Fn([f64; 3]) -> f64,
    X: Fn([f64; 3]) -> f64,
{
    let g = walker_matrix(f(p), eps);
    let dg = metric_derivatives(f, eps, p, h);
    let xv: Vec<f64> = field.iter().map(|c| c(p)).collect();
    let mut dx = [[0.0; 3]; 3];
    for (k, row) in dx.iter_mut().enumerate() {
        for (i, v) in row.iter_mut().enumerate() {
            *v = central(&field[k], p, i, h);
        }
    }
    let mut lie = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            lie[i][j] = (0..3)
                .map(|k| xv[k] * dg[k][i][j] + g[k][j] * dx[k][i] + g[i][k] * dx[k][j])
                .sum();
        }
    }
    lie
}
