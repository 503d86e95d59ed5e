//! Convexity, Jensen-gap and Hermite–Hadamard checks on the Heinz function.
//!
//! Grid checks that assert two independent facts (a minimum location and a
//! family of convexity gaps) encode them as a three-link chain
//! `[value at the centre, grid minimum, grid minimum + smallest gap]`, so the
//! two slacks are exactly the two quantities that must be nonnegative.

use super::heinz::{unit_grid, HeinzInstance};
use super::verdict::{InequalityVerdict, VerdictBuilder};
use super::CheckOptions;
use crate::error::{Error, Result};
use crate::quadrature::try_integrate_1d;

pub const CONVEXITY_F_GRID: usize = 21;
pub const CONVEXITY_G_GRID: usize = 11;
pub const JENSEN_GRID: usize = 21;

/// `φ(t) = (1 − p) g(δ) + p g(t) − g((1 − p)δ + pt)` for any scalar `g`.
pub fn jensen_phi_fn<G>(mut g: G, delta: f64, p: f64, t: f64) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    check_p(p)?;
    Ok((1.0 - p) * g(delta)? + p * g(t)? - g((1.0 - p) * delta + p * t)?)
}

/// [`jensen_phi_fn`] with `g` the Heinz function of `inst`.
pub fn jensen_phi(inst: &HeinzInstance, delta: f64, p: f64, t: f64) -> Result<f64> {
    jensen_phi_fn(|s| inst.heinz_f(s), delta, p, t)
}

/// Hermite–Hadamard four-term chain for a scalar `g` on `[a, b]`:
/// `g(m) ≤ mean g ≤ (g(a) + 2 g(m) + g(b))/4 ≤ (g(a) + g(b))/2`.
pub fn check_hermite_hadamard<G>(mut g: G, a: f64, b: f64, opts: &CheckOptions) -> Result<InequalityVerdict>
where
    G: FnMut(f64) -> Result<f64>,
{
    if !(a < b) {
        return Err(Error::InvalidParams(format!("interval must satisfy a < b, got [{a}, {b}]")));
    }
    let m = 0.5 * (a + b);
    let (ga, gm, gb) = (g(a)?, g(m)?, g(b)?);
    let quad_tol = opts.quad_tol * ga.abs().max(gb.abs()).max(gm.abs()).max(1.0);
    let q = try_integrate_1d(&mut g, a, b, quad_tol)?;
    let width = b - a;
    Ok(VerdictBuilder::new("hermite-hadamard", opts.tol_rel)
        .link("g(m)", gm)
        .link("mean g", q.value / width)
        .link("(g(a)+2g(m)+g(b))/4", 0.25 * (ga + 2.0 * gm + gb))
        .link("(g(a)+g(b))/2", 0.5 * (ga + gb))
        .allow_abs(quad_tol.max(q.error_estimate) / width)
        .build())
}

/// Midpoint convexity of `f` over all node pairs of a 21-point grid, and
/// the grid minimum at `t = 1/2`.
pub fn check_convexity_f(inst: &HeinzInstance, opts: &CheckOptions) -> Result<InequalityVerdict> {
    let curve = inst.curve(CONVEXITY_F_GRID)?;
    let f: Vec<f64> = curve.samples.iter().map(|&(_, v)| v).collect();
    let mut gap = f64::INFINITY;
    for i in 0..f.len() {
        for j in (i + 2..f.len()).step_by(2) {
            gap = gap.min(0.5 * (f[i] + f[j]) - f[(i + j) / 2]);
        }
    }
    let centre = f[f.len() / 2];
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(VerdictBuilder::new("convexity-f", opts.tol_rel)
        .link("f(1/2)", centre)
        .link("min f", min)
        .link("min f + min midpoint gap", min + gap)
        .scale_floor(f.iter().copied().fold(0.0, f64::max))
        .fingerprint(inst.fingerprint("convexity-f", &[]))
        .build())
}

/// Midpoint convexity of `G` at every interior node of an 11×11 grid along
/// the two axes and both diagonals, and the grid minimum at `(1/2, 1/2)`.
pub fn check_convexity_g(inst: &HeinzInstance, opts: &CheckOptions) -> Result<InequalityVerdict> {
    let g = inst.surface(CONVEXITY_G_GRID)?;
    let k = g.nodes.len();
    let mut gap = f64::INFINITY;
    for i in 1..k - 1 {
        for j in 1..k - 1 {
            let c = g.at(i, j);
            let pairs = [
                (g.at(i - 1, j), g.at(i + 1, j)),
                (g.at(i, j - 1), g.at(i, j + 1)),
                (g.at(i - 1, j - 1), g.at(i + 1, j + 1)),
                (g.at(i - 1, j + 1), g.at(i + 1, j - 1)),
            ];
            for (a, b) in pairs {
                gap = gap.min(0.5 * (a + b) - c);
            }
        }
    }
    let all = g.values.iter().flatten().copied();
    let min = all.clone().fold(f64::INFINITY, f64::min);
    let max = all.fold(0.0, f64::max);
    Ok(VerdictBuilder::new("convexity-G", opts.tol_rel)
        .link("G(1/2,1/2)", g.at(k / 2, k / 2))
        .link("min G", min)
        .link("min G + min midpoint gap", min + gap)
        .scale_floor(max)
        .fingerprint(inst.fingerprint("convexity-G", &[]))
        .build())
}

/// `φ` with `δ = 1/2` on a 21-point grid: nonincreasing on `[0, 1/2]`,
/// nondecreasing on `[1/2, 1]`, and nonnegative. Slacks are measured against
/// the largest value of `f`.
pub fn check_jensen_phi(inst: &HeinzInstance, p: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
    check_p(p)?;
    let nodes = unit_grid(JENSEN_GRID)?;
    let phi = nodes.iter().map(|&t| jensen_phi(inst, 0.5, p, t)).collect::<Result<Vec<_>>>()?;
    let mid = nodes.len() / 2;
    let step = phi
        .windows(2)
        .enumerate()
        .map(|(k, w)| if k < mid { w[0] - w[1] } else { w[1] - w[0] })
        .fold(f64::INFINITY, f64::min);
    let min = phi.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(VerdictBuilder::new("jensen-phi", opts.tol_rel)
        .link("0", 0.0)
        .link("min phi", min)
        .link("min phi + min monotone step", min + step)
        .scale_floor(inst.heinz_f(0.0)?)
        .fingerprint(inst.fingerprint("jensen-phi", &[p]))
        .build())
}

/// `0 ≤ (1/p)(f((1−p)/2) − f((1−p)/2 + pμ')) ≤ f(0) − f(μ)` with
/// `μ' = min(μ, 1 − μ)`.
pub fn check_thm32(inst: &HeinzInstance, mu: f64, p: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
    check_p(p)?;
    let mu_r = mu.min(1.0 - mu);
    let base = 0.5 * (1.0 - p);
    let f0 = inst.heinz_f(0.0)?;
    Ok(VerdictBuilder::new("thm32", opts.tol_rel)
        .link("0", 0.0)
        .link("Jensen gap", (inst.heinz_f(base)? - inst.heinz_f(base + p * mu_r)?) / p)
        .link("f(0) - f(mu)", f0 - inst.heinz_f(mu)?)
        .scale_floor(f0)
        .fingerprint(inst.fingerprint("thm32", &[mu, p]))
        .build())
}

/// Whether the chain with the unreduced `μ` in the gap term holds. Because
/// `f(t) = f(1 − t)`, the unreduced argument `(1−p)/2 + pμ` is the mirror
/// image of the reduced one, so this agrees with [`check_thm32`].
pub fn thm32_printed_form_holds(inst: &HeinzInstance, mu: f64, p: f64, opts: &CheckOptions) -> Result<bool> {
    check_p(p)?;
    let base = 0.5 * (1.0 - p);
    let f0 = inst.heinz_f(0.0)?;
    Ok(VerdictBuilder::new("thm32", opts.tol_rel)
        .link("0", 0.0)
        .link("Jensen gap", (inst.heinz_f(base)? - inst.heinz_f(base + p * mu)?) / p)
        .link("f(0) - f(mu)", f0 - inst.heinz_f(mu)?)
        .scale_floor(f0)
        .build()
        .pass)
}

/// `0 ≤ (1/p)(f((1−p)/2 + pμ') − f(1/2)) ≤ f(μ) − f(1/2)`.
pub fn check_thm33(inst: &HeinzInstance, mu: f64, p: f64, opts: &CheckOptions) -> Result<InequalityVerdict> {
    check_p(p)?;
    let mu_r = mu.min(1.0 - mu);
    let half = inst.heinz_f(0.5)?;
    let f_mu = inst.heinz_f(mu)?;
    Ok(VerdictBuilder::new("thm33", opts.tol_rel)
        .link("0", 0.0)
        .link("Jensen gap", (inst.heinz_f(0.5 * (1.0 - p) + p * mu_r)? - half) / p)
        .link("f(mu) - f(1/2)", f_mu - half)
        .scale_floor(f_mu)
        .fingerprint(inst.fingerprint("thm33", &[mu, p]))
        .build())
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("p must lie in (0, 1), got {p}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::norms::NormSpec;

    fn diag_instance() -> HeinzInstance {
        let a = Matrix::diag_real(&[1.0, 4.0]).unwrap();
        let x = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        HeinzInstance::new(&a, &a, &x, 1.0, NormSpec::TRACE).unwrap()
    }

    fn scalar_instance() -> HeinzInstance {
        let m = |v: f64| Matrix::diag_real(&[v]).unwrap();
        HeinzInstance::new(&m(4.0), &m(9.0), &m(1.0), 1.0, NormSpec::TRACE).unwrap()
    }

    fn f(t: f64) -> f64 {
        (4f64.powf(t) + 4f64.powf(1.0 - t)).powi(2)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn jensen_phi_examples() {
        let d = diag_instance();
        assert_eq!(jensen_phi(&d, 0.3, 0.4, 0.3).unwrap(), 0.0);
        assert!(jensen_phi(&scalar_instance(), 0.5, 0.25, 0.9).unwrap().abs() < 1e-12);
        let want = 0.5 * 16.0 + 0.5 * 25.0 - f(0.25);
        assert!(close(jensen_phi(&d, 0.5, 0.5, 0.0).unwrap(), want));
    }

    #[test]
    fn lower_gap_chain_examples() {
        let opts = CheckOptions::default();
        let d = diag_instance();
        let v = check_thm32(&d, 0.0, 0.5, &opts).unwrap();
        assert!(v.values().iter().all(|x| x.abs() < 1e-12));
        let v = check_thm32(&d, 0.25, 0.5, &opts).unwrap();
        assert!(close(v.links[1].value, 2.0 * (f(0.25) - f(0.375))));
        assert!(close(v.links[2].value, 25.0 - f(0.25)));
        assert!(v.pass);
        let v = check_thm32(&d, 0.5, 0.25, &opts).unwrap();
        assert!(close(v.links[1].value, 4.0 * (f(0.375) - 16.0)));
        let v = check_thm32(&scalar_instance(), 0.7, 0.3, &opts).unwrap();
        assert!(v.values().iter().all(|x| x.abs() < 1e-11));
        for mu in [0.6, 0.8, 1.0] {
            assert!(thm32_printed_form_holds(&d, mu, 0.25, &opts).unwrap());
        }
    }

    #[test]
    fn upper_gap_chain_examples() {
        let opts = CheckOptions::default();
        let d = diag_instance();
        let v = check_thm33(&d, 0.0, 1.0 / 3.0, &opts).unwrap();
        assert!(close(v.links[1].value, 3.0 * (f(1.0 / 3.0) - 16.0)));
        assert!(close(v.links[2].value, 9.0));
        assert!(v.pass);
        let v = check_thm33(&d, 0.5, 0.4, &opts).unwrap();
        assert!(v.values().iter().all(|&x| x == 0.0));
        assert!(check_thm33(&d, 0.5, 1.0, &opts).is_err());
    }

    #[test]
    fn hermite_hadamard_on_scalar_convex_functions() {
        let opts = CheckOptions::default();
        let v = check_hermite_hadamard(|s| Ok(s * s), 0.0, 1.0, &opts).unwrap();
        let expected = [0.25, 1.0 / 3.0, 0.375, 0.5];
        for (got, want) in v.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(v.pass);
        let e = std::f64::consts::E;
        let v = check_hermite_hadamard(|s| Ok(s.exp()), 0.0, 1.0, &opts).unwrap();
        assert!((v.links[1].value - (e - 1.0)).abs() < 1e-10);
        assert!(v.pass);
    }

    #[test]
    fn hermite_hadamard_on_f_matches_the_hh_chain() {
        let opts = CheckOptions::default();
        let d = diag_instance();
        let hh_scalar = check_hermite_hadamard(|s| d.heinz_f(s), 0.2, 0.8, &opts).unwrap();
        let hh = d.check_hh_chain(0.2, &opts).unwrap();
        for (a, b) in hh_scalar.values().iter().zip(hh.values()) {
            assert!((a - b).abs() < 1e-12 * a.abs());
        }
    }

    #[test]
    fn convexity_checks_pass_on_oracle_instances() {
        let opts = CheckOptions::default();
        let v = check_convexity_f(&diag_instance(), &opts).unwrap();
        assert!(v.pass);
        assert!(close(v.links[0].value, 16.0) && close(v.links[1].value, 16.0));
        assert!(check_convexity_g(&diag_instance(), &opts).unwrap().pass);
        assert!(check_jensen_phi(&diag_instance(), 0.25, &opts).unwrap().pass);

        let v = check_convexity_g(&scalar_instance(), &opts).unwrap();
        assert!(v.pass && v.slacks.iter().all(|s| s.abs() < 1e-11));
    }
}
