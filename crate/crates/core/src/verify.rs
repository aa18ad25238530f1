//! Data-driven identity registry: assembles both sides of every certified
//! identity, reports residuals over parameter grids, and computes the
//! quantum-invariant table tau_N for the prism manifold M(2,2,2).
//!
//! Identities live in a static table (name -> parameter schema -> runner);
//! the grid runner and the CLI enumerate it mechanically, so adding an
//! identity requires no runner changes.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::{
    d5_series, d5_star_at_root, f_series, h1_series, h2_series, omega_series, qhyper_lhs,
    qhyper_rhs, FunctionId, FunctionTag,
};
use crate::mordell::{mordell_integral, watson_integral};
use crate::numkernel::{
    eta_quotient_correction, jacobi_triple_product_sides, qpoch_infinite, theta_psi, ComplexValue,
    Nome, Real,
};

/// Settings shared by all identity checks.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Working precision in bits.
    pub prec: usize,
    /// Internal tolerance handed to series/quadrature evaluation.
    pub eval_tol: f64,
    /// Relative-residual tolerance for pass/fail.
    pub identity_tol: f64,
    /// Below this magnitude the absolute residual decides instead.
    pub rel_floor: f64,
    /// Seed for the randomized transformation tuples.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { prec: 128, eval_tol: 1e-20, identity_tol: 1e-10, rel_floor: 1e-30, seed: 0x51_eed }
    }
}

impl VerifyConfig {
    pub fn with_prec(prec: usize) -> Self {
        VerifyConfig { prec, ..Default::default() }
    }
}

/// Named parameter values of one grid point.
pub type Params = BTreeMap<String, ComplexValue>;

fn param(params: &Params, name: &str) -> Result<ComplexValue> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| Error::Domain(format!("missing parameter '{name}'")))
}

/// Outcome of checking one identity at one parameter point.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity_name: String,
    pub params: Params,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub component_errors: Vec<f64>,
}

impl IdentityReport {
    fn build(
        identity_name: &str,
        params: Params,
        lhs: ComplexValue,
        rhs: ComplexValue,
        cfg: &VerifyConfig,
        component_errors: Vec<f64>,
    ) -> Self {
        let abs_residual = lhs.sub(&rhs).abs_f64();
        let denom = lhs.abs_f64().max(rhs.abs_f64());
        let rel_residual = if denom > 0.0 { abs_residual / denom } else { 0.0 };
        let passed = if lhs.abs_f64() > cfg.rel_floor {
            rel_residual <= cfg.identity_tol
        } else {
            abs_residual <= cfg.identity_tol
        };
        IdentityReport {
            identity_name: identity_name.into(),
            params,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance: cfg.identity_tol,
            passed,
            component_errors,
        }
    }

    /// JSON object in the report schema.
    pub fn to_json(&self) -> Value {
        let params: BTreeMap<&str, [f64; 2]> = self
            .params
            .iter()
            .map(|(k, v)| (k.as_str(), [v.re().to_f64(), v.im().to_f64()]))
            .collect();
        json!({
            "identity": self.identity_name,
            "params": params,
            "lhs": [self.lhs.re().to_f64(), self.lhs.im().to_f64()],
            "rhs": [self.rhs.re().to_f64(), self.rhs.im().to_f64()],
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "passed": self.passed,
        })
    }
}

fn params1(name: &str, v: ComplexValue) -> Params {
    let mut m = Params::new();
    m.insert(name.into(), v);
    m
}

/// Theorem 1: the Mordell integral against h1 and h2.
///
/// lhs = integral of e^{-alpha x^2}/cosh(alpha x) over the real line;
/// rhs = -4 sqrt(pi/alpha) q^{3/4} h1(q)
///       + (pi/alpha) q1^{-1/4} (h2(q1^2) - (1/2)[(q1^2;q1^2)]^5/[(q1^4;q1^4)]^4).
pub fn check_main_theorem(alpha: &ComplexValue, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let nome = Nome::from_alpha(alpha.clone())?;
    let lhs = mordell_integral(alpha, cfg.eval_tol)?;
    let h1 = h1_series(&nome, cfg.eval_tol)?;
    let dual_sq = nome.dual_squared()?;
    let h2 = h2_series(&dual_sq, cfg.eval_tol)?;
    let eta = eta_quotient_correction(dual_sq.q(), cfg.eval_tol)?;

    let pi_c = ComplexValue::from_real(Real::pi(cfg.prec));
    let pi_over_alpha = pi_c.div(alpha);
    let c1 = pi_over_alpha.sqrt().mul(&nome.q_pow_frac(3, 4)?).mul_i64(-4);
    let c2 = pi_over_alpha.mul(&nome.q1_pow_frac(-1, 4)?);
    let rhs = c1
        .mul(&h1.value)
        .add(&c2.mul(&h2.value.sub(&eta.value.scale_half())));

    let component_errors = vec![
        lhs.err_estimate,
        c1.abs_f64() * h1.err_estimate,
        c2.abs_f64() * h2.err_estimate,
        0.5 * c2.abs_f64() * eta.err_estimate,
    ];
    Ok(IdentityReport::build(
        "main-theorem",
        params1("alpha", alpha.clone()),
        lhs.value,
        rhs,
        cfg,
        component_errors,
    ))
}

/// Watson's transformation for omega and f.
///
/// The printed half-line normalization is off by a factor 2 (the integrand is
/// even); the certified identity uses the full-line integral, i.e. twice the
/// half-line quadrature:
/// 2 * integral_0^inf e^{-(3/4) alpha x^2} cosh(alpha x/2)/cosh(3 alpha x/2) dx
///   = -sqrt(4 pi/(3 alpha)) q^{2/3} omega(q) + (pi/alpha)/sqrt(3) q1^{-1/12} f(q1^2).
pub fn check_watson(alpha: &ComplexValue, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let nome = Nome::from_alpha(alpha.clone())?;
    let half_line = watson_integral(alpha, cfg.eval_tol)?;
    let lhs = half_line.value.mul_i64(2);
    let omega = omega_series(&nome, cfg.eval_tol)?;
    let dual_sq = nome.dual_squared()?;
    let f = f_series(&dual_sq, cfg.eval_tol)?;

    let prec = cfg.prec;
    let pi_c = ComplexValue::from_real(Real::pi(prec));
    let c1 = pi_c
        .mul_i64(4)
        .div(&alpha.mul_i64(3))
        .sqrt()
        .mul(&nome.q_pow_frac(2, 3)?)
        .neg();
    let sqrt3 = Real::from_i64(3, prec).sqrt();
    let c2 = pi_c.div(alpha).scale(&sqrt3.recip()).mul(&nome.q1_pow_frac(-1, 12)?);
    let rhs = c1.mul(&omega.value).add(&c2.mul(&f.value));

    let component_errors = vec![
        2.0 * half_line.err_estimate,
        c1.abs_f64() * omega.err_estimate,
        c2.abs_f64() * f.err_estimate,
    ];
    Ok(IdentityReport::build(
        "watson",
        params1("alpha", alpha.clone()),
        lhs,
        rhs,
        cfg,
        component_errors,
    ))
}

/// D5(q) = 2 h1(q) - [(q^2;q^2)_inf/(q;q)_inf]^2 omega(q).
pub fn check_d5_decomposition(q: &Nome, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let lhs = d5_series(q, cfg.eval_tol)?;
    let h1 = h1_series(q, cfg.eval_tol)?;
    let omega = omega_series(q, cfg.eval_tol)?;
    let qv = q.q();
    let q2 = qv.mul(qv);
    let p2 = qpoch_infinite(&q2, &q2, cfg.eval_tol)?;
    let p1 = qpoch_infinite(qv, qv, cfg.eval_tol)?;
    let ratio = p2.value.div(&p1.value);
    let rhs = h1.value.mul_i64(2).sub(&ratio.mul(&ratio).mul(&omega.value));
    let ratio_sq_abs = ratio.abs_f64().powi(2);
    let component_errors = vec![
        lhs.err_estimate,
        2.0 * h1.err_estimate,
        ratio_sq_abs * omega.err_estimate,
        2.0 * omega.abs_f64()
            * ratio_sq_abs
            * (p2.err_estimate / p2.abs_f64().max(1e-300) + p1.err_estimate / p1.abs_f64().max(1e-300)),
    ];
    Ok(IdentityReport::build(
        "d5-decomposition",
        params1("q", qv.clone()),
        lhs.value,
        rhs,
        cfg,
        component_errors,
    ))
}

/// Evaluates every representation of the tagged function at q and reports
/// the pair with the largest residual.
pub fn check_representations(tag: FunctionTag, q: &Nome, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let reps = tag.representations();
    let mut values = Vec::with_capacity(reps.len());
    let mut component_errors = Vec::with_capacity(reps.len());
    for rep in reps {
        let id = FunctionId::new(tag, *rep).expect("listed representation");
        let r = id.evaluate(q, cfg.eval_tol)?;
        component_errors.push(r.err_estimate);
        values.push(r.value);
    }
    let (mut worst_a, mut worst_b, mut worst) = (0usize, 0usize, 0.0f64);
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            let d = values[i].sub(&values[j]).abs_f64();
            if d >= worst {
                (worst_a, worst_b, worst) = (i, j, d);
            }
        }
    }
    let name = format!("{}-representations", tag.name());
    Ok(IdentityReport::build(
        &name,
        params1("q", q.q().clone()),
        values[worst_a].clone(),
        values[worst_b].clone(),
        cfg,
        component_errors,
    ))
}

/// The q-hypergeometric transformation, both sides evaluated independently.
pub fn check_qhyper(
    a: &ComplexValue,
    b: &ComplexValue,
    c: &ComplexValue,
    z: &ComplexValue,
    q: &Nome,
    cfg: &VerifyConfig,
) -> Result<IdentityReport> {
    let lhs = qhyper_lhs(a, b, c, z, q, cfg.eval_tol)?;
    let rhs = qhyper_rhs(a, b, c, z, q, cfg.eval_tol)?;
    let mut params = Params::new();
    params.insert("a".into(), a.clone());
    params.insert("b".into(), b.clone());
    params.insert("c".into(), c.clone());
    params.insert("z".into(), z.clone());
    params.insert("q".into(), q.q().clone());
    Ok(IdentityReport::build(
        "qhyper",
        params,
        lhs.value,
        rhs.value,
        cfg,
        vec![lhs.err_estimate, rhs.err_estimate],
    ))
}

/// Jacobi triple product: bilateral theta sum against the triple product.
pub fn check_jacobi_triple_product(
    z: &ComplexValue,
    q: &ComplexValue,
    cfg: &VerifyConfig,
) -> Result<IdentityReport> {
    let (lhs, rhs) = jacobi_triple_product_sides(z, q, cfg.eval_tol)?;
    let mut params = Params::new();
    params.insert("z".into(), z.clone());
    params.insert("q".into(), q.clone());
    Ok(IdentityReport::build(
        "jacobi-triple-product",
        params,
        lhs.value,
        rhs.value,
        cfg,
        vec![lhs.err_estimate, rhs.err_estimate],
    ))
}

/// psi(q) (q;q^2)_inf = (q^2;q^2)_inf (triple-product consequence).
pub fn check_theta_psi_product(q: &ComplexValue, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let psi = theta_psi(q, cfg.eval_tol)?;
    let q2 = q.mul(q);
    let odd = qpoch_infinite(q, &q2, cfg.eval_tol)?;
    let even = qpoch_infinite(&q2, &q2, cfg.eval_tol)?;
    let lhs = psi.value.mul(&odd.value);
    let component_errors = vec![
        psi.err_estimate * odd.abs_f64() + odd.err_estimate * psi.abs_f64(),
        even.err_estimate,
    ];
    Ok(IdentityReport::build(
        "theta-psi-product",
        params1("q", q.clone()),
        lhs,
        even.value,
        cfg,
        component_errors,
    ))
}

/// One row of the quantum-invariant table.
#[derive(Clone, Debug)]
pub struct WrtEntry {
    pub n: u32,
    pub tau: ComplexValue,
    pub d5_star_value: ComplexValue,
}

impl WrtEntry {
    /// Residual of the defining relation
    /// (e^{2 pi i/N} - 1) tau - 2 (1 - 2 D5*(e^{i pi/N})).
    pub fn definitional_residual(&self, prec: usize) -> f64 {
        let theta = Real::pi(prec)
            .mul(&Real::from_i64(2, prec))
            .div(&Real::from_i64(self.n as i64, prec));
        let root = ComplexValue::new(theta.cos(), theta.sin());
        let one = ComplexValue::one(prec);
        let lhs = root.sub(&one).mul(&self.tau);
        let rhs = one.sub(&self.d5_star_value.mul_i64(2)).mul_i64(2);
        lhs.sub(&rhs).abs_f64()
    }

    pub fn csv_row(&self) -> String {
        format!("{}, {:?}, {:?}", self.n, self.tau.re().to_f64(), self.tau.im().to_f64())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "tau": [self.tau.re().to_f64(), self.tau.im().to_f64()],
            "d5_star": [self.d5_star_value.re().to_f64(), self.d5_star_value.im().to_f64()],
        })
    }
}

/// tau_N = 2 (1 - 2 D5*(e^{i pi/N})) / (e^{2 pi i/N} - 1) for N in
/// [n_min, n_max]; N = 1 is rejected since e^{2 pi i} - 1 = 0.
pub fn wrt_table(n_min: u32, n_max: u32, prec: usize) -> Result<Vec<WrtEntry>> {
    if n_min < 2 {
        return Err(Error::Domain("N must be >= 2 (e^{2 pi i/N} - 1 vanishes at N = 1)".into()));
    }
    if n_min > n_max {
        return Err(Error::Domain("empty range: N_min > N_max".into()));
    }
    let one = ComplexValue::one(prec);
    let mut out = Vec::with_capacity((n_max - n_min + 1) as usize);
    for n in n_min..=n_max {
        let d5_star_value = d5_star_at_root(n, prec)?;
        let theta = Real::pi(prec).mul(&Real::from_i64(2, prec)).div(&Real::from_i64(n as i64, prec));
        let root = ComplexValue::new(theta.cos(), theta.sin());
        let tau = one
            .sub(&d5_star_value.mul_i64(2))
            .mul_i64(2)
            .div(&root.sub(&one));
        out.push(WrtEntry { n, tau, d5_star_value });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// registry

/// Identity names in registry order.
pub const IDENTITIES: [&str; 11] = [
    "main-theorem",
    "watson",
    "d5-decomposition",
    "d5-representations",
    "omega-representations",
    "f-representations",
    "h1-representations",
    "h2-representations",
    "qhyper",
    "jacobi-triple-product",
    "theta-psi-product",
];

/// Runs one identity at one parameter point.
pub fn run_identity(name: &str, params: &Params, cfg: &VerifyConfig) -> Result<IdentityReport> {
    match name {
        "main-theorem" => check_main_theorem(&param(params, "alpha")?, cfg),
        "watson" => check_watson(&param(params, "alpha")?, cfg),
        "d5-decomposition" => {
            check_d5_decomposition(&Nome::from_q(param(params, "q")?)?, cfg)
        }
        "d5-representations" | "omega-representations" | "f-representations"
        | "h1-representations" | "h2-representations" => {
            let tag = FunctionTag::parse(name.trim_end_matches("-representations"))?;
            check_representations(tag, &Nome::from_q(param(params, "q")?)?, cfg)
        }
        "qhyper" => check_qhyper(
            &param(params, "a")?,
            &param(params, "b")?,
            &param(params, "c")?,
            &param(params, "z")?,
            &Nome::from_q(param(params, "q")?)?,
            cfg,
        ),
        "jacobi-triple-product" => {
            check_jacobi_triple_product(&param(params, "z")?, &param(params, "q")?, cfg)
        }
        "theta-psi-product" => check_theta_psi_product(&param(params, "q")?, cfg),
        other => Err(Error::UnknownIdentity(other.into())),
    }
}

/// Canonical alpha grid: {0.5, 1, 2, pi, 1 + 0.4i}.
pub fn alpha_grid(prec: usize) -> Vec<ComplexValue> {
    vec![
        ComplexValue::from_f64(0.5, 0.0, prec),
        ComplexValue::from_f64(1.0, 0.0, prec),
        ComplexValue::from_f64(2.0, 0.0, prec),
        ComplexValue::from_real(Real::pi(prec)),
        ComplexValue::from_f64(1.0, 0.4, prec),
    ]
}

/// Canonical q grid: 0.1..0.8 plus 0.3 e^{i pi/6}.
pub fn q_grid(prec: usize) -> Vec<ComplexValue> {
    let mut g: Vec<ComplexValue> = (1..=8)
        .map(|k| ComplexValue::from_f64(k as f64 / 10.0, 0.0, prec))
        .collect();
    let theta = Real::pi(prec).div(&Real::from_i64(6, prec));
    let r = Real::from_f64(0.3, prec);
    g.push(ComplexValue::new(r.mul(&theta.cos()), r.mul(&theta.sin())));
    g
}

/// Canonical 5x5 (z, q) grid with |q| <= 0.8, 0.5 <= |z| <= 2.
pub fn jtp_grid(prec: usize) -> Vec<(ComplexValue, ComplexValue)> {
    let zs = [0.5, 0.75, 1.0, 1.5, 2.0];
    let qs = [0.1, 0.25, 0.4, 0.6, 0.8];
    let mut out = Vec::with_capacity(25);
    for z in zs {
        for q in qs {
            out.push((ComplexValue::from_f64(z, 0.0, prec), ComplexValue::from_f64(q, 0.0, prec)));
        }
    }
    out
}

fn polar(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> (f64, f64) {
    let r = rng.gen_range(r_lo..r_hi);
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    (r * t.cos(), r * t.sin())
}

fn cx_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cx_abs(a: (f64, f64)) -> f64 {
    a.0.hypot(a.1)
}

/// Admissibility prescan in f64: all denominator factors stay away from 0.
fn tuple_admissible(a: (f64, f64), z: (f64, f64), c: (f64, f64), q: (f64, f64)) -> bool {
    let az = cx_mul(a, z);
    let q2 = cx_mul(q, q);
    let mut cq = c;
    let mut azq = az;
    for _ in 0..80 {
        if (1.0 - cq.0).hypot(cq.1) < 0.05 || (1.0 - azq.0).hypot(azq.1) < 0.05 {
            return false;
        }
        cq = cx_mul(cq, q);
        azq = cx_mul(azq, q2);
    }
    true
}

/// Ten admissible transformation tuples (a, b, c, z, q): the substitution
/// a = q, b = q, c = 0, z = q^2 that produces the alternative D5 form, plus
/// seeded random tuples with |q| <= 0.5, |z| <= 0.5.
pub fn qhyper_tuples(cfg: &VerifyConfig) -> Vec<Params> {
    let prec = cfg.prec;
    let mut out = Vec::with_capacity(10);
    // the distinguished substitution at q = 0.2
    let q = ComplexValue::from_f64(0.2, 0.0, prec);
    let mut m = Params::new();
    m.insert("a".into(), q.clone());
    m.insert("b".into(), q.clone());
    m.insert("c".into(), ComplexValue::zero(prec));
    m.insert("z".into(), q.mul(&q));
    m.insert("q".into(), q);
    out.push(m);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while out.len() < 10 {
        let q = polar(&mut rng, 0.15, 0.5);
        let z = polar(&mut rng, 0.05, 0.5);
        let a = if rng.gen_bool(0.25) { (0.0, 0.0) } else { polar(&mut rng, 0.05, 0.7) };
        let b = if rng.gen_bool(0.25) { (0.0, 0.0) } else { polar(&mut rng, 0.05, 0.7) };
        let c = if b == (0.0, 0.0) || rng.gen_bool(0.5) { (0.0, 0.0) } else { polar(&mut rng, 0.05, 0.7) };
        if cx_abs(q) < 0.1 || !tuple_admissible(a, z, c, q) {
            continue;
        }
        let mut m = Params::new();
        m.insert("a".into(), ComplexValue::from_f64(a.0, a.1, prec));
        m.insert("b".into(), ComplexValue::from_f64(b.0, b.1, prec));
        m.insert("c".into(), ComplexValue::from_f64(c.0, c.1, prec));
        m.insert("z".into(), ComplexValue::from_f64(z.0, z.1, prec));
        m.insert("q".into(), ComplexValue::from_f64(q.0, q.1, prec));
        out.push(m);
    }
    out
}

/// Canonical parameter grid of one identity.
pub fn canonical_grid(name: &str, cfg: &VerifyConfig) -> Result<Vec<Params>> {
    let prec = cfg.prec;
    match name {
        "main-theorem" | "watson" => {
            Ok(alpha_grid(prec).into_iter().map(|a| params1("alpha", a)).collect())
        }
        "d5-decomposition" | "d5-representations" | "omega-representations"
        | "f-representations" | "h1-representations" | "h2-representations"
        | "theta-psi-product" => Ok(q_grid(prec).into_iter().map(|q| params1("q", q)).collect()),
        "qhyper" => Ok(qhyper_tuples(cfg)),
        "jacobi-triple-product" => Ok(jtp_grid(prec)
            .into_iter()
            .map(|(z, q)| {
                let mut m = Params::new();
                m.insert("z".into(), z);
                m.insert("q".into(), q);
                m
            })
            .collect()),
        other => Err(Error::UnknownIdentity(other.into())),
    }
}

/// Runs an identity over its canonical grid.
pub fn run_identity_grid(name: &str, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    canonical_grid(name, cfg)?
        .iter()
        .map(|p| run_identity(name, p, cfg))
        .collect()
}

/// Runs every registered identity over its canonical grid.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for name in IDENTITIES {
        out.extend(run_identity_grid(name, cfg)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrt_table_small_values() {
        // N = 2: D5* = 1 from the two-term finite sum, so tau = 1
        let t = wrt_table(2, 2, 128).unwrap();
        assert_eq!(t.len(), 1);
        let one = ComplexValue::one(128);
        assert!(t[0].d5_star_value.sub(&one).abs_f64() < 1e-35);
        assert!(t[0].tau.sub(&one).abs_f64() < 1e-35);
    }

    #[test]
    fn wrt_rejects_n1() {
        assert!(wrt_table(1, 5, 128).is_err());
        assert!(wrt_table(3, 2, 128).is_err());
    }

    #[test]
    fn wrt_definitional_invariant() {
        for e in wrt_table(2, 10, 128).unwrap() {
            assert!(e.definitional_residual(128) < 1e-30, "N={}", e.n);
        }
    }

    #[test]
    fn wrt_precision_doubling() {
        let base = wrt_table(2, 20, 128).unwrap();
        let fine = wrt_table(2, 20, 256).unwrap();
        for (b, f) in base.iter().zip(&fine) {
            assert!(b.tau.sub(&f.tau).abs_f64() < 1e-25, "N={}", b.n);
        }
    }

    #[test]
    fn registry_covers_every_name() {
        let cfg = VerifyConfig::default();
        for name in IDENTITIES {
            let grid = canonical_grid(name, &cfg).unwrap();
            assert!(!grid.is_empty());
        }
        assert!(run_identity("nosuch", &Params::new(), &cfg).is_err());
        assert!(canonical_grid("nosuch", &cfg).is_err());
    }

    #[test]
    fn qhyper_tuples_are_deterministic_and_include_substitution() {
        let cfg = VerifyConfig::default();
        let t1 = qhyper_tuples(&cfg);
        let t2 = qhyper_tuples(&cfg);
        assert_eq!(t1.len(), 10);
        for (a, b) in t1.iter().zip(&t2) {
            for (k, v) in a {
                assert!(v.sub(&b[k]).abs_f64() == 0.0);
            }
        }
        // first tuple is the distinguished substitution
        let q = &t1[0]["q"];
        assert!(t1[0]["a"].sub(q).abs_f64() == 0.0);
        assert!(t1[0]["b"].sub(q).abs_f64() == 0.0);
        assert!(t1[0]["c"].is_zero());
        assert!(t1[0]["z"].sub(&q.mul(q)).abs_f64() == 0.0);
    }

    #[test]
    fn report_pass_logic() {
        let cfg = VerifyConfig::default();
        let r = check_theta_psi_product(&ComplexValue::from_f64(0.3, 0.0, cfg.prec), &cfg).unwrap();
        assert!(r.passed, "residual {}", r.rel_residual);
        assert!(r.rel_residual < 1e-15);
        let j = r.to_json();
        assert_eq!(j["identity"], "theta-psi-product");
        assert!(j["passed"].as_bool().unwrap());
        assert!(j["params"]["q"][0].as_f64().unwrap() - 0.3 < 1e-15);
    }

    #[test]
    fn d5_decomposition_at_zero_like_point() {
        // q = 0 is trivially both sides 1; use the Nome guard via tiny q
        let cfg = VerifyConfig::default();
        let q = Nome::from_q(ComplexValue::zero(cfg.prec)).unwrap();
        let r = check_d5_decomposition(&q, &cfg).unwrap();
        assert_eq!(r.abs_residual, 0.0);
        assert!(r.passed);
    }
}
