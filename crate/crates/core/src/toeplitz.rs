//! Arbitrary-precision numerics for Toeplitz determinants with symbol
//! `exp(t(z + 1/z))`.
//!
//! The symbol's Fourier coefficients are modified Bessel values
//! `f_k = I_k(2t)`, summed directly from the defining series in the
//! working precision. On top of them this module computes:
//!
//! * [`solve_corners`] — `log D_n` and the corner quantities
//!   `U_n^±`, `V_n^±` together with the full solution vectors, via a
//!   symmetric positive-definite (Cholesky) factorization;
//! * [`d_sequence`] — all of `U_1..U_n` and `log D_1..log D_n` in one
//!   `O(n^2)` sweep of the classic symmetric-Toeplitz reflection
//!   recursion (the identification of reflection coefficients with `U_n`
//!   is validated in tests against [`solve_corners`], not assumed);
//! * [`det_general`] — the two-parameter determinant for `exp(rz + s/z)`;
//! * [`dhat`] and [`dhat_t1_second`] — the determinant for
//!   `exp(t1(z + 1/z) + t2(z^2 + 1/z^2))` and its exact second
//!   `t1`-derivative at `t1 = 0`, the latter by order-2 jet arithmetic
//!   rather than finite differences.
//!
//! Everything here is pure: concurrent evaluation over grids of `(n, t)`
//! is safe.
//!
//! The documented parameter domain is `t > 0`, where the matrix is
//! positive definite; all routines in fact accept any real `t` (the
//! symbol stays positive), which the parity tests rely on.

use rug::Float;

use crate::error::{Error, Result};
use crate::real::{eps, fl, zero};

/// Problem description: matrix dimension, symbol parameter, and working
/// precision in bits.
#[derive(Debug, Clone, Copy)]
pub struct ToeplitzSpec {
    pub n: usize,
    pub t: f64,
    pub precision: u32,
}

impl ToeplitzSpec {
    pub fn new(n: usize, t: f64, precision: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if precision < 64 {
            return Err(Error::InvalidInput("precision must be >= 64 bits".into()));
        }
        Ok(Self { n, t, precision })
    }
}

/// Fourier coefficient `f_k` of `exp(t(z + 1/z))`, i.e. `I_|k|(2t)`,
/// by direct series summation: `sum_m t^(2m+|k|) / (m! (m+|k|)!)`.
///
/// The terms all carry the same sign, so the sum is stopped once a term
/// drops below the running total by more than the working precision.
pub fn symbol_coeff(k: i64, t: f64, precision: u32) -> Float {
    bessel_i(k.unsigned_abs() as u32, &fl(precision, t), precision)
}

fn bessel_i(k: u32, t: &Float, prec: u32) -> Float {
    let mut term = fl(prec, t.clone().pow(k));
    if k > 0 {
        term /= crate::real::factorial(prec, k);
    }
    if term.is_zero() {
        return term;
    }
    let t2 = fl(prec, t * t);
    let mut sum = term.clone();
    let stop = eps(prec, prec + 16);
    let mut m: u64 = 0;
    loop {
        term *= &t2;
        term /= fl(prec, (m + 1) * (m + 1 + k as u64));
        sum += &term;
        m += 1;
        let bound = fl(prec, &stop * &sum).abs();
        if fl(prec, term.abs_ref()) <= bound {
            break;
        }
    }
    sum
}

/// `f_0..f_k_max` at parameter `t`.
fn symbol_coeffs(k_max: usize, t: f64, prec: u32) -> Vec<Float> {
    let tf = fl(prec, t);
    (0..=k_max).map(|k| bessel_i(k as u32, &tf, prec)).collect()
}

// ---------------------------------------------------------------------------
// dense symmetric solves
// ---------------------------------------------------------------------------

/// In-place Cholesky factorization; on success the lower triangle holds L.
fn cholesky(a: &mut [Vec<Float>], prec: u32) -> Result<()> {
    let n = a.len();
    for j in 0..n {
        let mut d = a[j][j].clone();
        for k in 0..j {
            d -= fl(prec, &a[j][k] * &a[j][k]);
        }
        if d <= 0 {
            return Err(Error::FactorizationFailed { pivot: j });
        }
        a[j][j] = d.sqrt();
        for i in j + 1..n {
            let mut s = a[i][j].clone();
            for k in 0..j {
                s -= fl(prec, &a[i][k] * &a[j][k]);
            }
            a[i][j] = fl(prec, &s / &a[j][j]);
        }
    }
    Ok(())
}

fn cholesky_solve(l: &[Vec<Float>], b: &[Float], prec: u32) -> Vec<Float> {
    let n = l.len();
    let mut y: Vec<Float> = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = b[i].clone();
        for (k, yk) in y.iter().enumerate() {
            s -= fl(prec, &l[i][k] * yk);
        }
        y.push(fl(prec, &s / &l[i][i]));
    }
    for i in (0..n).rev() {
        let mut s = y[i].clone();
        for k in i + 1..n {
            s -= fl(prec, &l[k][i] * &y[k]);
        }
        y[i] = fl(prec, &s / &l[i][i]);
    }
    y
}

/// Corner data of the order-`n` system at parameter `t`: `log D_n`, the
/// four corner scalars, and the solution vectors
/// `u^± = T_n^{-1} f^±`, `v^± = T_n^{-1} δ^±`.
///
/// Scalar fields follow the conventions `U_n^- = (u^+, δ^-)` (the plain
/// `U_n`), `U_n^+ = (u^+, δ^+)`, `V_n^± = (v^±, δ^+)`.
#[derive(Debug, Clone)]
pub struct CornerData {
    pub n: usize,
    pub t: f64,
    pub precision: u32,
    pub log_det: Float,
    pub u_minus: Float,
    pub u_plus: Float,
    pub v_plus: Float,
    pub v_minus: Float,
    pub vec_u_plus: Vec<Float>,
    pub vec_u_minus: Vec<Float>,
    pub vec_v_plus: Vec<Float>,
    pub vec_v_minus: Vec<Float>,
}

impl CornerData {
    /// `(u^+, f^+)`, needed by the corner identities.
    pub fn u_dot_f_plus(&self) -> Float {
        let prec = self.precision;
        let fs = symbol_coeffs(self.n, self.t, prec);
        let mut s = zero(prec);
        for (i, u) in self.vec_u_plus.iter().enumerate() {
            s += fl(prec, u * &fs[i + 1]);
        }
        s
    }

    /// `(u^-, f^+)`, needed by the corner identities.
    pub fn u_minus_dot_f_plus(&self) -> Float {
        let prec = self.precision;
        let fs = symbol_coeffs(self.n, self.t, prec);
        let mut s = zero(prec);
        for (i, u) in self.vec_u_minus.iter().enumerate() {
            s += fl(prec, u * &fs[i + 1]);
        }
        s
    }
}

/// Build `T_n`, factor it, and solve for all four corner vectors.
pub fn solve_corners(spec: &ToeplitzSpec) -> Result<CornerData> {
    let ToeplitzSpec { n, t, precision: prec } = *spec;
    let fs = symbol_coeffs(n, t, prec);

    let mut mat: Vec<Vec<Float>> =
        (0..n).map(|i| (0..n).map(|j| fs[i.abs_diff(j)].clone()).collect()).collect();
    cholesky(&mut mat, prec)?;

    let mut log_det = zero(prec);
    for (i, row) in mat.iter().enumerate() {
        log_det += fl(prec, row[i].ln_ref());
    }
    log_det *= 2u32;

    let f_plus: Vec<Float> = (1..=n).map(|k| fs[k].clone()).collect();
    let f_minus: Vec<Float> = (1..=n).rev().map(|k| fs[k].clone()).collect();
    let mut delta_plus = vec![zero(prec); n];
    delta_plus[0] = fl(prec, 1);
    let mut delta_minus = vec![zero(prec); n];
    delta_minus[n - 1] = fl(prec, 1);

    let vec_u_plus = cholesky_solve(&mat, &f_plus, prec);
    let vec_u_minus = cholesky_solve(&mat, &f_minus, prec);
    let vec_v_plus = cholesky_solve(&mat, &delta_plus, prec);
    let vec_v_minus = cholesky_solve(&mat, &delta_minus, prec);

    Ok(CornerData {
        n,
        t,
        precision: prec,
        log_det,
        u_minus: vec_u_plus[n - 1].clone(),
        u_plus: vec_u_plus[0].clone(),
        v_plus: vec_v_plus[0].clone(),
        v_minus: vec_v_minus[0].clone(),
        vec_u_plus,
        vec_u_minus,
        vec_v_plus,
        vec_v_minus,
    })
}

// ---------------------------------------------------------------------------
// Levinson-type recursion
// ---------------------------------------------------------------------------

/// `U_1..U_n_max` and `log D_1..log D_n_max` at a fixed `t`.
#[derive(Debug, Clone)]
pub struct USequence {
    pub t: f64,
    pub precision: u32,
    u: Vec<Float>,
    log_d: Vec<Float>,
}

impl USequence {
    pub fn n_max(&self) -> usize {
        self.u.len()
    }

    /// `U_n`, 1-indexed.
    pub fn u(&self, n: usize) -> &Float {
        &self.u[n - 1]
    }

    /// `log D_n`, 1-indexed; `log D_0 = 0` by the empty-determinant
    /// convention.
    pub fn log_det(&self, n: usize) -> Float {
        if n == 0 {
            zero(self.precision)
        } else {
            self.log_d[n - 1].clone()
        }
    }

    pub fn us(&self) -> &[Float] {
        &self.u
    }
}

/// Symmetric-Toeplitz reflection recursion producing all `U_k` and
/// `log D_k` for `k = 1..n_max` in `O(n_max^2)` operations.
///
/// The reflection coefficient of order `k` equals `U_k` and the
/// prediction error `E_k = D_{k+1}/D_k = 1/V_{k+1}^+`; both facts are
/// checked against [`solve_corners`] in the test suite. In exact
/// arithmetic `|U_k| < 1`; observing `|U_k| >= 1` means the working
/// precision has been exhausted and is reported as an error.
pub fn d_sequence(n_max: usize, t: f64, precision: u32) -> Result<USequence> {
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be >= 1".into()));
    }
    let prec = precision;
    let fs = symbol_coeffs(n_max, t, prec);
    let one = fl(prec, 1);

    let mut u = Vec::with_capacity(n_max);
    let mut log_d = Vec::with_capacity(n_max);

    // E_0 = f_0 = D_1.
    let mut err = fs[0].clone();
    let mut log_det = fl(prec, fs[0].ln_ref());
    log_d.push(log_det.clone());

    // phi holds the order-m solution of T_m phi = (f_1..f_m).
    let mut phi: Vec<Float> = Vec::with_capacity(n_max);
    for m in 1..=n_max {
        let mut num = fs[m].clone();
        for (j, p) in phi.iter().enumerate() {
            num -= fl(prec, p * &fs[m - 1 - j]);
        }
        let k = fl(prec, &num / &err);
        if fl(prec, k.abs_ref()) >= one {
            return Err(Error::PrecisionExhausted { context: "d_sequence", index: m });
        }

        // phi update: phi_j <- phi_j - k phi_{m-j}, new last entry k.
        let prev = phi.clone();
        for (j, p) in phi.iter_mut().enumerate() {
            *p -= fl(prec, &k * &prev[m - 2 - j]);
        }
        phi.push(k.clone());

        let shrink = fl(prec, &one - fl(prec, &k * &k));
        err *= &shrink;
        u.push(k);
        if m < n_max {
            log_det += fl(prec, err.ln_ref());
            log_d.push(log_det.clone());
        }
    }

    Ok(USequence { t, precision: prec, u, log_d })
}

// ---------------------------------------------------------------------------
// general two-parameter determinant
// ---------------------------------------------------------------------------

/// Fourier coefficient of `exp(rz + s/z)` at offset `k` (may be
/// negative): `sum_m r^(m+k) s^m / (m! (m+k)!)` for `k >= 0`, and the
/// same with `r`, `s` swapped for `k < 0`.
fn general_coeff(k: i64, r: f64, s: f64, prec: u32) -> Float {
    let (p, kk) = if k >= 0 { (r, k as u32) } else { (s, (-k) as u32) };
    let mut term = fl(prec, fl(prec, p).pow(kk));
    if kk > 0 {
        term /= crate::real::factorial(prec, kk);
    }
    if term.is_zero() {
        return term;
    }
    let x = fl(prec, r * s);
    let mut sum = term.clone();
    let stop = eps(prec, prec + 16);
    let mut m: u64 = 0;
    loop {
        term *= &x;
        term /= fl(prec, (m + 1) * (m + 1 + kk as u64));
        sum += &term;
        m += 1;
        let bound = fl(prec, &stop * fl(prec, sum.abs_ref()));
        if fl(prec, term.abs_ref()) <= bound {
            break;
        }
    }
    sum
}

/// Determinant of the Toeplitz matrix for `exp(rz + s/z)` by LU with
/// partial pivoting (the matrix is not symmetric unless `r = s`).
pub fn det_general(n: usize, r: f64, s: f64, precision: u32) -> Float {
    let prec = precision;
    if n == 0 {
        return fl(prec, 1);
    }
    let mut a: Vec<Vec<Float>> = (0..n)
        .map(|i| (0..n).map(|j| general_coeff(i as i64 - j as i64, r, s, prec)).collect())
        .collect();
    let mut det = fl(prec, 1);
    for p in 0..n {
        let mut piv = p;
        for i in p + 1..n {
            if a[i][p].clone().abs() > a[piv][p].clone().abs() {
                piv = i;
            }
        }
        if piv != p {
            a.swap(p, piv);
            det = -det;
        }
        if a[p][p].is_zero() {
            return zero(prec);
        }
        det *= &a[p][p];
        for i in p + 1..n {
            let factor = fl(prec, &a[i][p] / &a[p][p]);
            for j in p + 1..n {
                let d = fl(prec, &factor * &a[p][j]);
                a[i][j] -= d;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// the two-parameter symbol with a z^2 part
// ---------------------------------------------------------------------------

/// `I_0..` values at `2t`, long enough that the dropped tail is below
/// `I_0 * 2^-(prec+32)`.
fn bessel_tail(t: f64, prec: u32) -> Vec<Float> {
    let tf = fl(prec, t);
    let mut vals = vec![bessel_i(0, &tf, prec)];
    let thresh = fl(prec, &eps(prec, prec + 32) * fl(prec, vals[0].abs_ref()));
    let mut k = 1u32;
    loop {
        let v = bessel_i(k, &tf, prec);
        let small = fl(prec, v.abs_ref()) <= thresh;
        vals.push(v);
        if small {
            break;
        }
        k += 1;
    }
    vals
}

fn two_symbol_coeff(k: usize, a: &[Float], b: &[Float], prec: u32) -> Float {
    // g_k = sum_l I_l(2 t2) I_{k-2l}(2 t1), with a = I(2 t1), b = I(2 t2).
    let big_l = b.len() as i64 - 1;
    let big_j = a.len() as i64 - 1;
    let mut sum = zero(prec);
    for l in -big_l..=big_l {
        let j = k as i64 - 2 * l;
        if j.abs() > big_j {
            continue;
        }
        sum += fl(prec, &b[l.unsigned_abs() as usize] * &a[j.unsigned_abs() as usize]);
    }
    sum
}

/// Determinant of the Toeplitz matrix for
/// `g(z) = exp(t1(z + 1/z) + t2(z^2 + 1/z^2))`.
pub fn dhat(n: usize, t1: f64, t2: f64, precision: u32) -> Result<Float> {
    let prec = precision;
    if n == 0 {
        return Ok(fl(prec, 1));
    }
    let a = bessel_tail(t1, prec);
    let b = bessel_tail(t2, prec);
    let g: Vec<Float> = (0..n).map(|k| two_symbol_coeff(k, &a, &b, prec)).collect();
    let mut mat: Vec<Vec<Float>> =
        (0..n).map(|i| (0..n).map(|j| g[i.abs_diff(j)].clone()).collect()).collect();
    cholesky(&mut mat, prec)?;
    let mut det = fl(prec, 1);
    for (i, row) in mat.iter().enumerate() {
        det *= fl(prec, &row[i] * &row[i]);
    }
    Ok(det)
}

/// Quadratic jet `a0 + a1 e + a2 e^2` (truncated at `e^3`).
#[derive(Clone)]
struct Jet {
    a: [Float; 3],
}

impl Jet {
    fn mul(&self, o: &Jet, prec: u32) -> Jet {
        let c0 = fl(prec, &self.a[0] * &o.a[0]);
        let mut c1 = fl(prec, &self.a[0] * &o.a[1]);
        c1 += fl(prec, &self.a[1] * &o.a[0]);
        let mut c2 = fl(prec, &self.a[0] * &o.a[2]);
        c2 += fl(prec, &self.a[1] * &o.a[1]);
        c2 += fl(prec, &self.a[2] * &o.a[0]);
        Jet { a: [c0, c1, c2] }
    }

    fn sub(&self, o: &Jet, prec: u32) -> Jet {
        Jet {
            a: [
                fl(prec, &self.a[0] - &o.a[0]),
                fl(prec, &self.a[1] - &o.a[1]),
                fl(prec, &self.a[2] - &o.a[2]),
            ],
        }
    }

    fn div(&self, o: &Jet, prec: u32) -> Jet {
        let c0 = fl(prec, &self.a[0] / &o.a[0]);
        let mut n1 = self.a[1].clone();
        n1 -= fl(prec, &c0 * &o.a[1]);
        let c1 = fl(prec, &n1 / &o.a[0]);
        let mut n2 = self.a[2].clone();
        n2 -= fl(prec, &c0 * &o.a[2]);
        n2 -= fl(prec, &c1 * &o.a[1]);
        let c2 = fl(prec, &n2 / &o.a[0]);
        Jet { a: [c0, c1, c2] }
    }
}

/// `∂²D̂_n/∂t1²` at `(t1, t2) = (0, t)`, computed exactly in `t1` by
/// expanding every matrix entry as an order-2 jet in `t1` and running the
/// elimination in jet arithmetic. No finite differences are involved.
pub fn dhat_t1_second(n: usize, t: f64, precision: u32) -> Result<Float> {
    let prec = precision;
    if n == 0 {
        return Ok(zero(prec));
    }
    let b = bessel_tail(t, prec);
    let bval = |m: usize| -> Float {
        if m < b.len() {
            b[m].clone()
        } else {
            zero(prec)
        }
    };
    // Jet of g_k(t1, t) around t1 = 0:
    //   even k: I_{k/2}(2t) + [I_{k/2} + (I_{|k/2-1|} + I_{k/2+1})/2] t1^2
    //   odd k:  [I_{(k-1)/2}(2t) + I_{(k+1)/2}(2t)] t1
    let entry = |k: usize| -> Jet {
        if k % 2 == 0 {
            let h = k / 2;
            let mut c2 = bval(h);
            let mut wings = bval(h + 1);
            wings += bval(h.abs_diff(1));
            wings /= 2u32;
            c2 += wings;
            Jet { a: [bval(h), zero(prec), c2] }
        } else {
            let mut c1 = bval(k / 2);
            c1 += bval(k / 2 + 1);
            Jet { a: [zero(prec), c1, zero(prec)] }
        }
    };

    let mut a: Vec<Vec<Jet>> =
        (0..n).map(|i| (0..n).map(|j| entry(i.abs_diff(j))).collect()).collect();
    let mut det = Jet { a: [fl(prec, 1), zero(prec), zero(prec)] };
    for p in 0..n {
        if a[p][p].a[0].is_zero() {
            return Err(Error::FactorizationFailed { pivot: p });
        }
        det = det.mul(&a[p][p], prec);
        for i in p + 1..n {
            let factor = a[i][p].div(&a[p][p], prec);
            for j in p + 1..n {
                let d = factor.mul(&a[p][j], prec);
                a[i][j] = a[i][j].sub(&d, prec);
            }
        }
    }
    let mut second = det.a[2].clone();
    second *= 2u32;
    Ok(second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rel_diff;

    const P: u32 = 128;

    #[test]
    fn symbol_coeff_at_zero_argument() {
        assert_eq!(symbol_coeff(0, 0.0, P), 1);
        assert_eq!(symbol_coeff(2, 0.0, P), 0);
    }

    #[test]
    fn symbol_coeff_small_t_series_oracle() {
        // Independent oracle: partial sums of t^(2m+3)/(m!(m+3)!) in f64.
        let t: f64 = 0.1;
        let mut oracle = 0.0f64;
        let mut num = t.powi(3);
        let mut den = 6.0;
        for m in 0..6u32 {
            oracle += num / den;
            num *= t * t;
            den *= ((m + 1) * (m + 4)) as f64;
        }
        let got = symbol_coeff(3, t, P).to_f64();
        assert!((got - oracle).abs() / oracle < 1e-14, "got {got:e} want {oracle:e}");
        assert!((got - 1.6708375e-4).abs() < 1e-10);
    }

    #[test]
    fn symbol_coeff_even_in_k() {
        for &t in &[0.3, 1.0, 2.7] {
            assert_eq!(symbol_coeff(-2, t, P), symbol_coeff(2, t, P));
        }
    }

    #[test]
    fn corners_one_by_one() {
        let spec = ToeplitzSpec::new(1, 0.8, P).unwrap();
        let c = solve_corners(&spec).unwrap();
        let want = fl(P, symbol_coeff(1, 0.8, P) / symbol_coeff(0, 0.8, P));
        assert!(rel_diff(&c.u_minus, &want) < 1e-35);
    }

    #[test]
    fn corners_two_by_two_log_det() {
        let spec = ToeplitzSpec::new(2, 1.0, P).unwrap();
        let c = solve_corners(&spec).unwrap();
        // Cofactor oracle: log(f_0^2 - f_1^2).
        let f0 = symbol_coeff(0, 1.0, P);
        let f1 = symbol_coeff(1, 1.0, P);
        let det = fl(P, &f0 * &f0) - fl(P, &f1 * &f1);
        let want = fl(P, det.ln_ref());
        assert!(rel_diff(&c.log_det, &want) < 1e-35);
    }

    #[test]
    fn corners_symmetry_of_u_inner_products() {
        // (T^-1 f^+, delta^-) = (T^-1 f^-, delta^+): last of u^+ vs first of u^-.
        for n in 1..=6 {
            let c = solve_corners(&ToeplitzSpec::new(n, 1.3, P).unwrap()).unwrap();
            assert!(rel_diff(&c.vec_u_plus[n - 1], &c.vec_u_minus[0]) < 1e-30, "n={n}");
            assert!(c.v_plus > 0);
        }
    }

    #[test]
    fn corners_small_t_leading_order() {
        let t = 0.01;
        for n in 1..=4usize {
            let c = solve_corners(&ToeplitzSpec::new(n, t, P).unwrap()).unwrap();
            let mut lead = fl(P, t).pow(n as u32) / crate::real::factorial(P, n as u32);
            if n % 2 == 0 {
                lead = -lead;
            }
            let ratio = fl(P, &c.u_minus / &lead).to_f64();
            assert!((ratio - 1.0).abs() < 1e-3, "n={n} ratio={ratio}");
        }
    }

    #[test]
    fn d_sequence_matches_direct_solve() {
        let seq = d_sequence(6, 1.0, P).unwrap();
        for n in 1..=6 {
            let c = solve_corners(&ToeplitzSpec::new(n, 1.0, P).unwrap()).unwrap();
            assert!(rel_diff(seq.u(n), &c.u_minus) < 1e-32, "U_{n}");
            assert!(rel_diff(&seq.log_det(n), &c.log_det) < 1e-30, "log D_{n}");
        }
    }

    #[test]
    fn d_sequence_tiny_t() {
        let seq = d_sequence(5, 1e-6, P).unwrap();
        for n in 1..=5 {
            assert!(seq.log_det(n).to_f64().abs() < 1e-10);
        }
        let want = fl(P, symbol_coeff(1, 1e-6, P) / symbol_coeff(0, 1e-6, P));
        assert!(rel_diff(seq.u(1), &want) < 1e-30);
    }

    #[test]
    fn d_sequence_chain_rule_v_plus() {
        // log D_n - log D_{n-1} = -log V_n^+ with V from the direct solve.
        let seq = d_sequence(5, 2.0, P).unwrap();
        for n in 2..=5 {
            let c = solve_corners(&ToeplitzSpec::new(n, 2.0, P).unwrap()).unwrap();
            let diff = fl(P, seq.log_det(n) - seq.log_det(n - 1));
            let want = -fl(P, c.v_plus.ln_ref());
            assert!(rel_diff(&diff, &want) < 1e-28, "n={n}");
        }
    }

    #[test]
    fn det_general_triangular_case() {
        for n in 1..=5 {
            let d = det_general(n, 2.0, 0.0, P);
            assert!(rel_diff(&d, &fl(P, 1)) < 1e-30, "n={n}");
        }
    }

    #[test]
    fn det_general_depends_on_product_only() {
        let a = det_general(3, 2.0, 0.5, P);
        let b = det_general(3, 1.0, 1.0, P);
        assert!(rel_diff(&a, &b) < 1e-30);
        let c = det_general(4, 2.25, 1.0, P);
        let d = det_general(4, 1.5, 1.5, P);
        assert!(rel_diff(&c, &d) < 1e-30);
    }

    #[test]
    fn det_general_one_by_one() {
        // I_0-type series in the product rs.
        let (r, s) = (1.7, 0.6);
        let d = det_general(1, r, s, P);
        let mut oracle = fl(P, 1);
        let mut term = fl(P, 1);
        for m in 0..60u64 {
            term *= fl(P, r * s);
            term /= fl(P, (m + 1) * (m + 1));
            oracle += &term;
        }
        assert!(rel_diff(&d, &oracle) < 1e-30);
    }

    #[test]
    fn det_general_matches_symmetric_route() {
        let seq = d_sequence(4, 1.2, P).unwrap();
        let d = det_general(4, 1.2, 1.2, P);
        let want = fl(P, seq.log_det(4).exp_ref());
        assert!(rel_diff(&d, &want) < 1e-28);
    }

    #[test]
    fn dhat_reduces_to_products_at_t1_zero() {
        let t = 1.1;
        let seq = d_sequence(4, t, P).unwrap();
        for n in 1..=6usize {
            let lhs = dhat(n, 0.0, t, P).unwrap();
            let sum = fl(P, seq.log_det(n.div_ceil(2)) + seq.log_det(n / 2));
            let rhs = fl(P, sum.exp_ref());
            assert!(rel_diff(&lhs, &rhs) < 1e-28, "n={n}");
        }
    }

    #[test]
    fn dhat_reduces_to_d_at_t2_zero() {
        let t = 0.9;
        let seq = d_sequence(5, t, P).unwrap();
        let lhs = dhat(5, t, 0.0, P).unwrap();
        let rhs = fl(P, seq.log_det(5).exp_ref());
        assert!(rel_diff(&lhs, &rhs) < 1e-28);
    }

    #[test]
    fn dhat_t1_second_combination_is_h_product() {
        // (1/4) ∂²D̂(0,t)/∂t1² + (1/4) ∂²D̂(0,-t)/∂t1² equals the product
        // form of H_n: D_{n/2-1} D_{n/2+1} for even n, D_{(n-1)/2} D_{(n+1)/2}
        // for odd n.
        let t = 0.8;
        let seq = d_sequence(5, t, P).unwrap();
        for n in 2..=6usize {
            let plus = dhat_t1_second(n, t, P).unwrap();
            let minus = dhat_t1_second(n, -t, P).unwrap();
            let mut lhs = fl(P, &plus + &minus);
            lhs /= 4u32;
            let (a, b) = if n % 2 == 0 { (n / 2 - 1, n / 2 + 1) } else { ((n - 1) / 2, (n + 1) / 2) };
            let sum = fl(P, seq.log_det(a) + seq.log_det(b));
            let rhs = fl(P, sum.exp_ref());
            assert!(rel_diff(&lhs, &rhs) < 1e-25, "n={n}");
        }
    }

    #[test]
    fn dhat_t1_second_corner_formula() {
        // (1/2) (∂²D̂/∂t1²)(0,t) / D̂(0,t) equals 1 - U_{n/2}^2 for even n
        // and 1 + U^+_{(n+1)/2} - U^+_{(n-1)/2} for odd n.
        let t = 1.4;
        for n in 2..=5usize {
            let second = dhat_t1_second(n, t, P).unwrap();
            let base = dhat(n, 0.0, t, P).unwrap();
            let mut lhs = fl(P, &second / &base);
            lhs /= 2u32;
            let rhs = if n % 2 == 0 {
                let c = solve_corners(&ToeplitzSpec::new(n / 2, t, P).unwrap()).unwrap();
                fl(P, 1) - fl(P, &c.u_minus * &c.u_minus)
            } else {
                let hi = solve_corners(&ToeplitzSpec::new((n + 1) / 2, t, P).unwrap()).unwrap();
                let lo_u = if n == 1 {
                    zero(P)
                } else {
                    solve_corners(&ToeplitzSpec::new((n - 1) / 2, t, P).unwrap()).unwrap().u_plus
                };
                let mut r = fl(P, 1);
                r += &hi.u_plus;
                r -= &lo_u;
                r
            };
            assert!(rel_diff(&lhs, &rhs) < 1e-25, "n={n}");
        }
    }

    #[test]
    fn parity_of_corner_quantities() {
        for n in 1..=5usize {
            let plus = solve_corners(&ToeplitzSpec::new(n, 1.7, P).unwrap()).unwrap();
            let minus = solve_corners(&ToeplitzSpec::new(n, -1.7, P).unwrap()).unwrap();
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            let want_u_minus = fl(P, &plus.u_minus * &fl(P, sign));
            assert!(rel_diff(&minus.u_minus, &want_u_minus) < 1e-30, "U^- n={n}");
            let want_u_plus = -plus.u_plus.clone();
            assert!(rel_diff(&minus.u_plus, &want_u_plus) < 1e-30, "U^+ n={n}");
        }
    }

    #[test]
    fn log_det_second_derivative_is_four_phi() {
        // (d²/dt² + (1/t) d/dt) log D_n = 4 (1 - U_n^2), checked with
        // central differences at 256 bits.
        let hp: u32 = 256;
        let h = 1e-5;
        let t = 1.3;
        for n in 1..=3usize {
            let lo = d_sequence(n, t - h, hp).unwrap().log_det(n);
            let mid = d_sequence(n, t, hp).unwrap().log_det(n);
            let hi = d_sequence(n, t + h, hp).unwrap().log_det(n);
            let d2 = (hi.to_f64() - 2.0 * mid.to_f64() + lo.to_f64()) / (h * h);
            let d1 = (hi.to_f64() - lo.to_f64()) / (2.0 * h);
            let u = d_sequence(n, t, hp).unwrap().u(n).to_f64();
            let phi = 1.0 - u * u;
            let resid = d2 + d1 / t - 4.0 * phi;
            assert!(resid.abs() < 1e-6, "n={n} resid={resid:e}");
        }
    }
}
