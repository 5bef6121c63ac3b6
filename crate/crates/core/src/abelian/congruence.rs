//! Linear congruence systems `A x ≡ b (mod m_i)` with per-row moduli.
//!
//! Row `i` is scaled by `N / m_i`, where `N` is the lcm of the moduli, which
//! turns the system into a uniform one over `Z/N`. That system is then
//! diagonalised over `Z/N` by invertible row and column operations (a Smith
//! form over the residue ring), so every intermediate entry stays below `N`.
//!
//! [`solve_over_integers`] solves the same system through the integer Smith
//! form of `[A | diag(m)]`; it is kept as an independent route for checking.

use num_integer::Integer;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::scalar::ext_gcd;

fn check_dims(a: &IntMatrix<i64>, b: Option<&[i64]>, moduli: &[i64]) -> Result<()> {
    if a.rows() != moduli.len() {
        return Err(Error::Dimension(format!(
            "{} rows but {} moduli",
            a.rows(),
            moduli.len()
        )));
    }
    if let Some(b) = b {
        if b.len() != moduli.len() {
            return Err(Error::Dimension(format!(
                "right-hand side has {} entries, expected {}",
                b.len(),
                moduli.len()
            )));
        }
    }
    if let Some(m) = moduli.iter().find(|&&m| m < 1) {
        return Err(Error::InvalidGroup(format!("modulus {m} is not positive")));
    }
    Ok(())
}

pub(crate) fn lcm_all(values: impl IntoIterator<Item = i64>) -> Result<i64> {
    values.into_iter().try_fold(1i64, |acc, m| {
        let g = acc.gcd(&m);
        (acc / g).checked_mul(m).ok_or(Error::Overflow)
    })
}

/// Diagonal form of a matrix over `Z/n`: `u * a * v ≡ diag` with `u`, `v`
/// invertible modulo `n`.
struct ModDiagonal {
    n: i128,
    u: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    diag: Vec<i128>,
}

fn md(x: i128, n: i128) -> i128 {
    x.rem_euclid(n)
}

fn diagonalize_mod(mut w: Vec<Vec<i128>>, cols: usize, n: i128) -> Result<ModDiagonal> {
    let rows = w.len();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    for row in w.iter_mut() {
        for x in row.iter_mut() {
            *x = md(*x, n);
        }
    }

    // [[p, q], [r, s]] applied to rows a, b of m
    let rows_op = |m: &mut Vec<Vec<i128>>, a: usize, b: usize, c: [i128; 4]| {
        for j in 0..m[a].len() {
            let (x, y) = (m[a][j], m[b][j]);
            m[a][j] = md(c[0] * x + c[1] * y, n);
            m[b][j] = md(c[2] * x + c[3] * y, n);
        }
    };
    let cols_op = |m: &mut Vec<Vec<i128>>, a: usize, b: usize, c: [i128; 4]| {
        for row in m.iter_mut() {
            let (x, y) = (row[a], row[b]);
            row[a] = md(x * c[0] + y * c[2], n);
            row[b] = md(x * c[1] + y * c[3], n);
        }
    };

    let mut diag = Vec::new();
    for p in 0..rows.min(cols) {
        // smallest nonzero residue in the remaining block
        let mut best: Option<(i128, usize, usize)> = None;
        for (i, row) in w.iter().enumerate().skip(p) {
            for (j, &x) in row.iter().enumerate().skip(p) {
                if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.swap(p, pi);
        u.swap(p, pi);
        for row in w.iter_mut() {
            row.swap(p, pj);
        }
        for row in v.iter_mut() {
            row.swap(p, pj);
        }
        loop {
            let mut dirty = false;
            for i in p + 1..rows {
                let (x, y) = (w[p][p], w[i][p]);
                if y == 0 {
                    continue;
                }
                let op = if y % x == 0 {
                    [1, 0, -(y / x), 1]
                } else {
                    let (g, s, t) = ext_gcd(x, y)?;
                    [s, t, -(y / g), x / g]
                };
                rows_op(&mut w, p, i, op);
                rows_op(&mut u, p, i, op);
            }
            for j in p + 1..cols {
                let (x, y) = (w[p][p], w[p][j]);
                if y == 0 {
                    continue;
                }
                let op = if y % x == 0 {
                    [1, -(y / x), 0, 1]
                } else {
                    let (g, s, t) = ext_gcd(x, y)?;
                    // columns: (c_p, c_j) -> (s c_p + t c_j, -(y/g) c_p + (x/g) c_j)
                    dirty = true;
                    [s, -(y / g), t, x / g]
                };
                cols_op(&mut w, p, j, op);
                cols_op(&mut v, p, j, op);
            }
            if !dirty || (p + 1..rows).all(|i| w[i][p] == 0) {
                break;
            }
        }
        diag.push(w[p][p]);
    }
    Ok(ModDiagonal { n, u, v, diag })
}

fn scaled_system(a: &IntMatrix<i64>, moduli: &[i64], n: i64) -> Vec<Vec<i128>> {
    (0..a.rows())
        .map(|i| {
            let scale = i128::from(n / moduli[i]);
            a.row(i).iter().map(|&x| i128::from(x) * scale).collect()
        })
        .collect()
}

/// Finds `x` with `A x ≡ b (mod moduli[i])` for every row `i`, or `None` when
/// no solution exists. Entries of `x` are reduced modulo the lcm of the moduli.
pub fn solve_linear_congruence(
    a: &IntMatrix<i64>,
    b: &[i64],
    moduli: &[i64],
) -> Result<Option<Vec<i64>>> {
    check_dims(a, Some(b), moduli)?;
    let n = lcm_all(moduli.iter().copied())?;
    let cols = a.cols();
    if n == 1 {
        return Ok(Some(vec![0; cols]));
    }
    let nn = i128::from(n);
    let rhs: Vec<i128> =
        (0..b.len()).map(|i| md(i128::from(b[i]) * i128::from(n / moduli[i]), nn)).collect();
    let dg = diagonalize_mod(scaled_system(a, moduli, n), cols, nn)?;
    let c: Vec<i128> = dg
        .u
        .iter()
        .map(|row| md(row.iter().zip(&rhs).map(|(&p, &q)| p * q % nn).sum::<i128>(), nn))
        .collect();
    let mut y = vec![0i128; cols];
    for (i, &ci) in c.iter().enumerate() {
        let d = dg.diag.get(i).copied().unwrap_or(0);
        if d == 0 {
            if ci != 0 {
                return Ok(None);
            }
            continue;
        }
        let g = d.gcd(&nn);
        if ci % g != 0 {
            return Ok(None);
        }
        let m = nn / g;
        let (_, inv, _) = ext_gcd(d / g, m)?;
        y[i] = md((ci / g) % m * md(inv, m), m);
    }
    let x = (0..cols)
        .map(|r| {
            let s = (0..cols).map(|k| dg.v[r][k] * y[k] % nn).sum::<i128>();
            md(s, nn) as i64
        })
        .collect();
    Ok(Some(x))
}

/// Generators of the lattice `{x in Z^n : A x ≡ 0 (mod moduli[i])}` modulo
/// `period`, which must be a multiple of every modulus. The returned vectors,
/// together with `period * Z^n`, generate the whole solution lattice.
pub fn congruence_kernel(
    a: &IntMatrix<i64>,
    moduli: &[i64],
    period: i64,
) -> Result<Vec<Vec<i64>>> {
    check_dims(a, None, moduli)?;
    if moduli.iter().any(|&m| period % m != 0) {
        return Err(Error::Precondition(format!(
            "period {period} is not a multiple of every modulus"
        )));
    }
    let cols = a.cols();
    if period == 1 {
        return Ok(Vec::new());
    }
    let nn = i128::from(period);
    let dg = diagonalize_mod(scaled_system(a, moduli, period), cols, nn)?;
    debug_assert_eq!(dg.n, nn);
    let mut gens = Vec::new();
    for k in 0..cols {
        let d = dg.diag.get(k).copied().unwrap_or(0);
        let mult = if d == 0 { 1 } else { nn / d.gcd(&nn) };
        if mult == nn {
            continue;
        }
        let g: Vec<i64> = (0..cols).map(|r| md(dg.v[r][k] * mult, nn) as i64).collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    Ok(gens)
}

/// Solves the same system as [`solve_linear_congruence`] through the integer
/// Smith form of the augmented matrix `[A | diag(moduli)]`.
pub fn solve_over_integers(
    a: &IntMatrix<i64>,
    b: &[i64],
    moduli: &[i64],
) -> Result<Option<Vec<i64>>> {
    check_dims(a, Some(b), moduli)?;
    let rows = a.rows();
    let cols = a.cols();
    let n = lcm_all(moduli.iter().copied())?;
    let mut aug = IntMatrix::<i128>::zeros(rows, cols + rows);
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, j)] = i128::from(a[(i, j)]);
        }
        aug[(i, cols + i)] = i128::from(moduli[i]);
    }
    let snf = smith_normal_form(&aug)?;
    let rhs: Vec<i128> = b.iter().map(|&x| i128::from(x)).collect();
    let c = snf.u.mul_vec(&rhs)?;
    let mut y = vec![0i128; cols + rows];
    for (i, &ci) in c.iter().enumerate() {
        let d = if i < cols + rows { snf.d[(i, i)] } else { 0 };
        if d == 0 {
            if ci != 0 {
                return Ok(None);
            }
        } else if ci % d != 0 {
            return Ok(None);
        } else {
            y[i] = ci / d;
        }
    }
    let full = snf.v.mul_vec(&y)?;
    let nn = i128::from(n);
    Ok(Some(full[..cols].iter().map(|&x| md(x, nn) as i64).collect()))
}
