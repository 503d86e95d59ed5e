use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub label: String,
    pub value: f64,
}

/// One evaluated inequality chain `links[0] ≤ links[1] ≤ ...`.
///
/// `pass` holds iff every slack `links[i+1] − links[i]` is at least
/// `−tol_used · scale`, where `scale = max(1, max |link|, scale_floor)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub suite_id: String,
    pub links: Vec<Link>,
    pub slacks: Vec<f64>,
    /// Relative tolerance, including any absolute allowances (quadrature or
    /// numerical radius error) divided by `scale`.
    pub tol_used: f64,
    pub scale: f64,
    pub pass: bool,
    pub instance_fingerprint: String,
}

impl InequalityVerdict {
    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Smallest slack divided by `scale`.
    pub fn min_relative_slack(&self) -> f64 {
        self.min_slack() / self.scale
    }

    pub fn values(&self) -> Vec<f64> {
        self.links.iter().map(|l| l.value).collect()
    }
}

/// Assembles a verdict from labelled links and a tolerance policy.
#[derive(Debug, Clone)]
pub struct VerdictBuilder {
    suite_id: String,
    links: Vec<Link>,
    tol_rel: f64,
    extra_abs: f64,
    scale_floor: f64,
    fingerprint: String,
}

impl VerdictBuilder {
    pub fn new(suite_id: &str, tol_rel: f64) -> Self {
        Self {
            suite_id: suite_id.to_owned(),
            links: Vec::new(),
            tol_rel,
            extra_abs: 0.0,
            scale_floor: 1.0,
            fingerprint: String::new(),
        }
    }

    pub fn link(mut self, label: impl Into<String>, value: f64) -> Self {
        self.links.push(Link { label: label.into(), value });
        self
    }

    /// Absolute slack allowance on top of the relative tolerance.
    pub fn allow_abs(mut self, extra: f64) -> Self {
        self.extra_abs += extra.max(0.0);
        self
    }

    pub fn scale_floor(mut self, floor: f64) -> Self {
        self.scale_floor = self.scale_floor.max(floor.abs());
        self
    }

    pub fn fingerprint(mut self, fp: String) -> Self {
        self.fingerprint = fp;
        self
    }

    pub fn build(self) -> InequalityVerdict {
        let scale = self.links.iter().map(|l| l.value.abs()).fold(self.scale_floor, f64::max);
        let slacks: Vec<f64> = self.links.windows(2).map(|w| w[1].value - w[0].value).collect();
        let tol_used = self.tol_rel + self.extra_abs / scale;
        let finite = self.links.iter().all(|l| l.value.is_finite());
        let pass = finite && slacks.iter().all(|&s| s >= -tol_used * scale);
        InequalityVerdict {
            suite_id: self.suite_id,
            links: self.links,
            slacks,
            tol_used,
            scale,
            pass,
            instance_fingerprint: self.fingerprint,
        }
    }
}

/// Incremental hash of matrices and parameters, rendered as 16 hex digits.
#[derive(Clone, Debug)]
pub struct Fingerprinter(Sha256);

impl Default for Fingerprinter {
    fn default() -> Self {
        Self(Sha256::new())
    }
}

impl Fingerprinter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn matrix(mut self, m: &Matrix) -> Self {
        self.0.update(m.to_bytes());
        self
    }

    pub fn number(mut self, x: f64) -> Self {
        self.0.update(x.to_le_bytes());
        self
    }

    pub fn text(mut self, s: &str) -> Self {
        self.0.update((s.len() as u64).to_le_bytes());
        self.0.update(s.as_bytes());
        self
    }

    pub fn finish(self) -> String {
        let digest = self.0.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
