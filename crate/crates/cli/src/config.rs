//! Run configuration: command-line flags layered over an optional TOML file.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use pointsplit_core::{LatticeConfig, TrigPoly};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// One `n:re:im` smearing harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Harmonic {
    pub n: i64,
    pub re: f64,
    pub im: f64,
}

impl std::str::FromStr for Harmonic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [n, re, im] = parts.as_slice() else {
            return Err(format!("expected n:re:im, got `{s}`"));
        };
        let n = n.trim().parse().map_err(|e| format!("bad harmonic index in `{s}`: {e}"))?;
        let re: f64 = re.trim().parse().map_err(|e| format!("bad real part in `{s}`: {e}"))?;
        let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part in `{s}`: {e}"))?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(format!("non-finite coefficient in `{s}`"));
        }
        Ok(Harmonic { n, re, im })
    }
}

impl<'de> Deserialize<'de> for Harmonic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Fermion mass m (> 0).
    #[arg(long)]
    pub mass: Option<f64>,
    /// Momentum spacing Δp (> 0); the box length is 2π/Δp.
    #[arg(long = "delta-p")]
    pub delta_p: Option<f64>,
    /// Mode cutoff index: momenta p_j = jΔp for |j| ≤ n_max.
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    /// Split distance ε; repeat for a sweep.
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Vec<f64>,
    /// Smearing harmonic `n:re:im` of f(z) = Σ c_n e^{2πinz/L}; repeatable.
    /// A harmonic given without its mirror −n gets the conjugate coefficient.
    #[arg(long = "f-harmonic", allow_hyphen_values = true)]
    pub f_harmonic: Vec<Harmonic>,
    /// Abel damping η for the kernel integral (default ε²).
    #[arg(long)]
    pub eta: Option<f64>,
    /// Upper limit of the numerical kernel integral (default max(10⁴, 100/ε)).
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output path. JSON is written as-is; CSV writes `<stem>_<table>.csv`
    /// next to it. Without it the report goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with the same keys as the flags (underscored); flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Flip the current's sign in the continuity check (negative control).
    #[arg(long = "corrupt-sign", hide = true)]
    pub corrupt_sign: bool,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum EpsValue {
    One(f64),
    Many(Vec<f64>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    mass: Option<f64>,
    delta_p: Option<f64>,
    n_max: Option<usize>,
    eps: Option<EpsValue>,
    #[serde(default)]
    f_harmonic: Vec<Harmonic>,
    eta: Option<f64>,
    cutoff: Option<f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

impl FileConfig {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Per-command defaults for values the user did not set.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub eps: &'static [f64],
}

/// Fully resolved and validated configuration, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub mass: f64,
    pub delta_p: f64,
    pub n_max: usize,
    pub eps: Vec<f64>,
    /// Complete harmonic list including conjugate mirrors, ascending in n.
    pub f_harmonics: Vec<Harmonic>,
    pub eta: Option<f64>,
    pub cutoff: Option<f64>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub corrupt_sign: bool,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs, defaults: Defaults) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let mass = args.mass.or(file.mass).unwrap_or(1.0);
        let delta_p = args.delta_p.or(file.delta_p).unwrap_or(1.0);
        let n_max = args.n_max.or(file.n_max).unwrap_or(2);
        let mut eps = if !args.eps.is_empty() {
            args.eps.clone()
        } else {
            match file.eps {
                Some(EpsValue::One(e)) => vec![e],
                Some(EpsValue::Many(v)) => v,
                None => defaults.eps.to_vec(),
            }
        };
        let harmonics = if !args.f_harmonic.is_empty() { args.f_harmonic.clone() } else { file.f_harmonic };

        if n_max == 0 {
            return Err(CliError::Config("n_max must be at least 1".into()));
        }
        // Lattice-level checks (mass, delta_p) live in the core constructor.
        LatticeConfig::new(mass, delta_p, n_max)?;
        if let Some(bad) = eps.iter().find(|e| !e.is_finite()) {
            return Err(CliError::Config(format!("eps must be finite, got {bad}")));
        }
        eps.sort_by(f64::total_cmp);
        eps.dedup();
        let eta = args.eta.or(file.eta);
        let cutoff = args.cutoff.or(file.cutoff);
        for (name, v) in [("eta", eta), ("cutoff", cutoff)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::Config(format!("{name} must be a positive number, got {v}")));
                }
            }
        }

        let mut cfg = RunConfig {
            mass,
            delta_p,
            n_max,
            eps,
            f_harmonics: Vec::new(),
            eta,
            cutoff,
            format: args.format.or(file.format).unwrap_or(Format::Json),
            out: args.out.clone().or(file.out),
            corrupt_sign: args.corrupt_sign,
        };
        cfg.f_harmonics = complete_harmonics(&harmonics, cfg.lattice().box_length())?;
        if let Some(h) = cfg.f_harmonics.iter().find(|h| h.n.unsigned_abs() as usize > 2 * n_max) {
            return Err(CliError::Config(format!(
                "harmonic {} exceeds 2·n_max = {}: f would couple modes outside the lattice",
                h.n,
                2 * n_max
            )));
        }
        Ok(cfg)
    }

    pub fn lattice(&self) -> LatticeConfig {
        LatticeConfig::new(self.mass, self.delta_p, self.n_max).expect("validated in resolve")
    }

    /// Smearing function from the resolved harmonics (`cos(2πz/L)` by default).
    pub fn smearing(&self) -> TrigPoly {
        let pairs: Vec<(i64, Complex64)> = self.f_harmonics.iter().map(|h| (h.n, Complex64::new(h.re, h.im))).collect();
        TrigPoly::new(self.lattice().box_length(), &pairs).expect("validated in resolve")
    }

    /// Largest cutoff momentum times |ε| at or below π/2 means no mode can
    /// have a negative split energy.
    pub fn below_negative_energy_threshold(&self, eps: f64) -> bool {
        self.lattice().cutoff() * eps.abs() <= FRAC_PI_2
    }
}

fn complete_harmonics(given: &[Harmonic], box_length: f64) -> Result<Vec<Harmonic>, CliError> {
    let pairs: Vec<(i64, Complex64)> = if given.is_empty() {
        vec![(1, Complex64::new(0.5, 0.0))]
    } else {
        given.iter().map(|h| (h.n, Complex64::new(h.re, h.im))).collect()
    };
    let f = TrigPoly::new(box_length, &pairs)?;
    let full: BTreeMap<i64, Complex64> = f.harmonics().collect();
    Ok(full.into_iter().map(|(n, c)| Harmonic { n, re: c.re + 0.0, im: c.im + 0.0 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: Defaults = Defaults { eps: &[0.5] };

    #[test]
    fn harmonic_parsing() {
        let h: Harmonic = "-2:0.5:-1e-3".parse().unwrap();
        assert_eq!(h, Harmonic { n: -2, re: 0.5, im: -1e-3 });
        assert!("1:2".parse::<Harmonic>().is_err());
        assert!("x:1:0".parse::<Harmonic>().is_err());
        assert!("1:nan:0".parse::<Harmonic>().is_err());
    }

    #[test]
    fn defaults_and_mirror_completion() {
        let cfg = RunConfig::resolve(&CommonArgs::default(), D).unwrap();
        assert_eq!((cfg.mass, cfg.delta_p, cfg.n_max), (1.0, 1.0, 2));
        assert_eq!(cfg.eps, vec![0.5]);
        let ns: Vec<i64> = cfg.f_harmonics.iter().map(|h| h.n).collect();
        assert_eq!(ns, vec![-1, 1]);
    }

    #[test]
    fn eps_sorted_and_deduplicated() {
        let args = CommonArgs { eps: vec![0.1, 0.025, 0.05, 0.1], ..Default::default() };
        assert_eq!(RunConfig::resolve(&args, D).unwrap().eps, vec![0.025, 0.05, 0.1]);
    }

    #[test]
    fn rejects_bad_values() {
        for args in [
            CommonArgs { n_max: Some(0), ..Default::default() },
            CommonArgs { mass: Some(-1.0), ..Default::default() },
            CommonArgs { eta: Some(0.0), ..Default::default() },
            CommonArgs { eps: vec![f64::INFINITY], ..Default::default() },
            CommonArgs {
                f_harmonic: vec![Harmonic { n: 1, re: 1.0, im: 1.0 }, Harmonic { n: -1, re: 1.0, im: 1.0 }],
                ..Default::default()
            },
            CommonArgs { f_harmonic: vec![Harmonic { n: 0, re: 1.0, im: 0.5 }], ..Default::default() },
            CommonArgs { f_harmonic: vec![Harmonic { n: 5, re: 1.0, im: 0.0 }], ..Default::default() },
        ] {
            assert!(RunConfig::resolve(&args, D).is_err(), "{args:?}");
        }
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "mass = 2.0\nn_max = 3\neps = [0.2, 0.1]\nf_harmonic = [\"2:0.25:0\"]\n").unwrap();
        let args = CommonArgs { config: Some(path.clone()), n_max: Some(4), ..Default::default() };
        let cfg = RunConfig::resolve(&args, D).unwrap();
        assert_eq!((cfg.mass, cfg.n_max), (2.0, 4));
        assert_eq!(cfg.eps, vec![0.1, 0.2]);
        assert_eq!(cfg.f_harmonics.len(), 2);

        std::fs::write(&path, "masss = 2.0\n").unwrap();
        let args = CommonArgs { config: Some(path), ..Default::default() };
        assert!(RunConfig::resolve(&args, D).is_err());
    }
}
