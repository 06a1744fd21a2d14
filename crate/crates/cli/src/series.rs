//! Series registry: stable names mapped to evaluators and reference values.

use std::fmt;

use lattice_telescope::limits;
use lattice_telescope::number_theory::dirichlet_sigma_check;
use lattice_telescope::series::{
    d111, eisenstein, mt_scalar, theorem1_boundary, theorem1_direct, theorem1_oracle, theorem2,
    theorem3, theorem4, tropical_sums, zagier_chain, ChainParams, MTIndex,
};
use lattice_telescope::{EvalOptions, LatticeShape, Method, SumResult, TruncationSpec};

use crate::report::Report;

pub const NAMES: [&str; 11] = [
    "theorem1",
    "theorem2",
    "tropical1",
    "tropical2",
    "mt",
    "theorem3",
    "eisenstein",
    "d111",
    "theorem4",
    "zagier-chain",
    "dirichlet-sigma",
];

/// Bad or missing parameters; reported as a usage error.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Eval(lattice_telescope::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(msg) => f.write_str(msg),
            RunError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl From<lattice_telescope::Error> for RunError {
    fn from(e: lattice_telescope::Error) -> Self {
        match e {
            lattice_telescope::Error::Domain(msg) | lattice_telescope::Error::Refused(msg) => {
                RunError::Usage(msg)
            }
            other => RunError::Eval(other),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Usage(msg.into()))
}

/// Parameters of a `sum` run, already parsed.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub series: String,
    pub coord_box: Option<u32>,
    pub coeff_box: Option<u32>,
    pub bound: Option<u32>,
    pub n: Option<u64>,
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub coprime: bool,
    pub z_re: Option<f64>,
    pub z_im: Option<f64>,
    pub s: Option<f64>,
    pub method: Option<Method>,
    pub eval: EvalOptions,
}

impl RunConfig {
    fn coord_box(&self) -> Result<u32, RunError> {
        let n = self
            .coord_box
            .map_or_else(|| usage(format!("{} needs --box N", self.series)), Ok)?;
        TruncationSpec::CoordBox(n).validate()?;
        Ok(n)
    }

    fn coeff_box(&self, default: Option<u32>) -> Result<u32, RunError> {
        let m = match self.coeff_box.or(default) {
            Some(m) => m,
            None => return usage(format!("{} needs --coeff-box M", self.series)),
        };
        TruncationSpec::CoeffBox(m).validate()?;
        Ok(m)
    }

    fn bound(&self) -> Result<u32, RunError> {
        match self.bound {
            Some(0) | None => usage(format!("{} needs --bound N >= 1", self.series)),
            Some(n) => Ok(n),
        }
    }

    fn shape(&self) -> Result<LatticeShape, RunError> {
        Ok(LatticeShape::new(
            self.z_re.unwrap_or(0.0),
            self.z_im.unwrap_or(1.0),
        )?)
    }

    fn s(&self) -> Result<f64, RunError> {
        self.s
            .map_or_else(|| usage(format!("{} needs --s", self.series)), Ok)
    }

    fn method(&self, allowed: &[Method], default: Method) -> Result<Method, RunError> {
        let method = self.method.unwrap_or(default);
        if !allowed.contains(&method) {
            return usage(format!("{} does not support method {method}", self.series));
        }
        Ok(method)
    }
}

fn from_sum(series: &str, r: &SumResult) -> Report {
    let mut report = Report::new(
        series,
        r.spec.to_string(),
        &r.method.to_string(),
        r.value,
        r.terms,
    );
    report.tail_hint = r.tail_hint;
    report.elapsed_ms = r.elapsed.as_secs_f64() * 1e3;
    report
}

fn shape_params(report: Report, z: &LatticeShape) -> Report {
    report.param("z_re", z.re).param("z_im", z.im)
}

pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    let opts = &cfg.eval;
    let report = match cfg.series.as_str() {
        "theorem1" => {
            let n = cfg.coord_box()?;
            let method = cfg.method(
                &[Method::Direct, Method::Boundary, Method::Oracle],
                Method::Boundary,
            )?;
            let r = match method {
                Method::Direct => theorem1_direct(n, opts)?,
                Method::Boundary => theorem1_boundary(n, opts)?,
                Method::Oracle => theorem1_oracle(n, opts)?,
            };
            // reported as 4Σ so the reference is π
            let mut report = from_sum("theorem1", &r).component("quadrant_sum", r.value);
            report.value = 4.0 * r.value;
            report.tail_hint = r.tail_hint.map(|t| 4.0 * t);
            report
                .param("box", n)
                .reference(Some(4.0 * limits::theorem1()))
        }
        "theorem2" => {
            let n = cfg.coord_box()?;
            let method = cfg.method(&[Method::Direct, Method::Boundary], Method::Boundary)?;
            let r = theorem2(n, method, opts)?;
            from_sum("theorem2", &r)
                .param("box", n)
                .reference(Some(limits::theorem2()))
        }
        "tropical1" | "tropical2" => {
            let n = cfg.coord_box()?;
            cfg.method(&[Method::Direct], Method::Direct)?;
            let (first, second) = tropical_sums(n, opts)?;
            if cfg.series == "tropical1" {
                from_sum("tropical1", &first)
                    .param("box", n)
                    .reference(Some(limits::tropical_defect()))
            } else {
                from_sum("tropical2", &second)
                    .param("box", n)
                    .reference(Some(limits::tropical_defect_sq()))
            }
        }
        "mt" => {
            let bound = cfg.bound()?;
            let (k, n, m) = match (cfg.k, cfg.n, cfg.m) {
                (Some(k), Some(n), Some(m)) => (k, u32::try_from(n).unwrap_or(u32::MAX), m),
                _ => return usage("mt needs --k, --n and --m"),
            };
            cfg.method(&[Method::Direct], Method::Direct)?;
            let r = mt_scalar(MTIndex::new(k, n, m)?, bound, cfg.coprime, opts)?;
            let reference = match ((k, n, m), cfg.coprime) {
                ((2, 2, 2), true) => Some(limits::mt_222_coprime()),
                ((2, 2, 2), false) => Some(limits::mt_222_all()?),
                _ => None,
            };
            from_sum("mt", &r)
                .param("k", k)
                .param("n", n)
                .param("m", m)
                .param("coprime", cfg.coprime)
                .param("bound", bound)
                .reference(reference)
        }
        "theorem3" => {
            let n = cfg.n.map_or_else(|| usage("theorem3 needs --n"), Ok)?;
            let bound = cfg.coord_box()?;
            let method = cfg.method(&[Method::Direct, Method::Oracle], Method::Direct)?;
            let r = theorem3(n, bound, method, opts)?;
            let mut report = from_sum("theorem3", &r.weighted)
                .param("n", n)
                .param("box", bound)
                .component("normalized", r.normalized.value)
                .component("axis_ray_terms", r.axis_ray_terms as f64)
                .reference(Some(limits::theorem3(n)?));
            report.axis_ray_subtotal = Some(r.axis_ray_subtotal);
            report
        }
        "eisenstein" => {
            let z = cfg.shape()?;
            let s = cfg.s()?;
            let m = cfg.coeff_box(None)?;
            cfg.method(&[Method::Direct], Method::Direct)?;
            let r = eisenstein(&z, s, m, opts)?;
            // closed form known only at z = i, s = 3
            let reference = (z == LatticeShape::I && s == 3.0)
                .then(limits::eisenstein_i3)
                .transpose()?;
            shape_params(from_sum("eisenstein", &r), &z)
                .param("s", s)
                .param("coeff_box", m)
                .reference(reference)
        }
        "d111" => {
            let z = cfg.shape()?;
            let m = cfg.coeff_box(None)?;
            cfg.method(&[Method::Direct], Method::Direct)?;
            let r = d111(&z, m, opts)?;
            let e3 = if z == LatticeShape::I {
                limits::eisenstein_i3()?
            } else {
                eisenstein(&z, 3.0, m.max(200), opts)?.extrapolated()
            };
            shape_params(from_sum("d111", &r.total), &z)
                .param("coeff_box", m)
                .component("collinear", r.collinear.value)
                .component("noncollinear", r.noncollinear.value)
                .component("eisenstein_3", e3)
                .reference(Some(limits::d111(e3)?))
        }
        "theorem4" => {
            let z = cfg.shape()?;
            let s = cfg.s()?;
            let m = cfg.coeff_box(None)?;
            cfg.method(&[Method::Direct], Method::Direct)?;
            let r = theorem4(&z, s, m, opts)?;
            shape_params(from_sum("theorem4", &r), &z)
                .param("s", s)
                .param("coeff_box", m)
                .reference(Some(limits::theorem4(z.im, s)?))
        }
        "zagier-chain" => {
            let defaults = ChainParams::default();
            let params = ChainParams {
                coeff_box: cfg.coeff_box(Some(defaults.coeff_box))?,
                detn_max: cfg.n.unwrap_or(defaults.detn_max),
                detn_box: cfg.coord_box.unwrap_or(defaults.detn_box),
                sigma_max: cfg.bound.map_or(defaults.sigma_max, u64::from),
            };
            if params.detn_max == 0 || params.detn_box == 0 || params.sigma_max == 0 {
                return usage("zagier-chain truncations must be positive");
            }
            let started = std::time::Instant::now();
            let c = zagier_chain(params, opts)?;
            let mut report = Report::new(
                "zagier-chain",
                TruncationSpec::CoeffBox(params.coeff_box).to_string(),
                "direct",
                c.triple_sum,
                0,
            )
            .param("coeff_box", params.coeff_box)
            .param("detn_max", params.detn_max)
            .param("detn_box", params.detn_box)
            .param("sigma_max", params.sigma_max)
            .component("triple_sum", c.triple_sum)
            .component("pair_sums", c.pair_sums)
            .component("sigma_sum_matched", c.sigma_sum_matched)
            .component("sigma_sum", c.sigma_sum)
            .component("closed_form", c.closed_form)
            .component("pair_vs_sigma_rel", c.pair_vs_sigma())
            .component("sigma_vs_closed_form_rel", c.sigma_vs_closed_form())
            .reference(Some(c.closed_form));
            report.tail_hint = Some(c.triple_tail);
            report.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            report
        }
        "dirichlet-sigma" => {
            let s = cfg.s()?;
            let n_max = cfg.bound()?;
            let started = std::time::Instant::now();
            let d = dirichlet_sigma_check(s, n_max as u64)?;
            let mut report = Report::new(
                "dirichlet-sigma",
                format!("n-max:{n_max}"),
                "direct",
                d.partial,
                n_max as u64,
            )
            .param("s", s)
            .param("bound", n_max)
            .reference(Some(d.closed_form));
            report.tail_hint = Some(d.tail_estimate);
            report.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            report
        }
        other => {
            return usage(format!(
                "unknown series '{other}' (known: {})",
                NAMES.join(", ")
            ));
        }
    };
    Ok(report
        .param("threads", cfg.eval.threads)
        .param("compensated", cfg.eval.compensated))
}
