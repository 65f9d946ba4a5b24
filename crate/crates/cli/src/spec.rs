use std::collections::BTreeMap;
use std::path::PathBuf;

use fibdense_core::elliptic::{MarkedPoint, QuarticPoint};
use fibdense_core::enriques::{
    k3_weierstrass_model, restrict_quartic_to_cone, ConeQuartic, CurvePoint, RamificationData, SectionConic,
};
use fibdense_core::fibration::{EllipticParam, FibrationError, FibrationModel, Multisection, ParamValue, Section};
use fibdense_core::{Poly, Rat, RatFn};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    a: Option<RawRatFn>,
    b: Option<RawRatFn>,
    multisection: Option<RawMultisection>,
    family: Option<Vec<RawMultisection>>,
    #[serde(default)]
    params: RawParams,
    cone_quartic: Option<BTreeMap<String, String>>,
    #[serde(default)]
    enriques: RawEnriques,
    output: Option<RawOutput>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRatFn {
    num: Vec<String>,
    den: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawMultisection {
    ZeroSection,
    ConstantX {
        x: String,
    },
    Parametrized {
        t: RawRatFn,
        x: RawRatFn,
        y: RawRatFn,
    },
    GraphOnQuartic {
        p: Vec<String>,
        marked: Option<RawMarked>,
        generator: Option<[String; 2]>,
    },
    Split {
        sections: Vec<RawSection>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawSection {
    Zero,
    Affine { x: RawRatFn, y: RawRatFn },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawMarked {
    InfinityBranch { root: String },
    Finite { z: String, w: String },
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawParams {
    height_bound: Option<u64>,
    k_max: Option<u32>,
    torsion_bound: Option<u32>,
    m_max: Option<u32>,
    samples: Option<Vec<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawEnriques {
    #[serde(default)]
    base_points: Vec<[String; 2]>,
    through: Option<[String; 2]>,
    #[serde(default)]
    allow_twist: bool,
    #[serde(default)]
    sections: Vec<[String; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub height_bound: u64,
    pub k_max: u32,
    pub torsion_bound: u32,
    pub m_max: u32,
    /// Probe samples; `None` means `enumerate_rationals(height_bound)`.
    pub samples: Option<Vec<Rat>>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            height_bound: 10,
            k_max: 5,
            torsion_bound: 12,
            m_max: 18,
            samples: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnriquesParams {
    pub base_points: Vec<(Rat, Rat)>,
    pub through: Option<CurvePoint>,
    pub allow_twist: bool,
    pub sections: Vec<SectionConic>,
}

/// A validated run description.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub fibration: Option<FibrationModel>,
    pub multisection: Option<Multisection>,
    pub family: Vec<Multisection>,
    pub params: Params,
    pub cone: Option<(ConeQuartic, RamificationData)>,
    pub enriques: EnriquesParams,
    pub out_dir: Option<PathBuf>,
}

fn invalid(field: impl Into<String>, reason: impl ToString) -> CliError {
    CliError::Validation {
        field: field.into(),
        reason: reason.to_string(),
    }
}

fn rat(field: &str, s: &str) -> Result<Rat, CliError> {
    s.parse().map_err(|e| invalid(field, e))
}

fn poly(field: &str, c: &[String]) -> Result<Poly, CliError> {
    let coeffs = c
        .iter()
        .enumerate()
        .map(|(i, s)| rat(&format!("{field}[{i}]"), s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

fn ratfn(field: &str, r: &RawRatFn) -> Result<RatFn, CliError> {
    let num = poly(&format!("{field}.num"), &r.num)?;
    let den = match &r.den {
        Some(d) => poly(&format!("{field}.den"), d)?,
        None => Poly::one(),
    };
    RatFn::new(num, den).map_err(|e| invalid(format!("{field}.den"), e))
}

fn build_multisection(field: &str, raw: &RawMultisection) -> Result<Multisection, CliError> {
    Ok(match raw {
        RawMultisection::ZeroSection => Multisection::ZeroSection,
        RawMultisection::ConstantX { x } => Multisection::ConstantX(rat(&format!("{field}.x"), x)?),
        RawMultisection::Parametrized { t, x, y } => Multisection::Parametrized {
            t: ratfn(&format!("{field}.t"), t)?,
            x: ratfn(&format!("{field}.x"), x)?,
            y: ratfn(&format!("{field}.y"), y)?,
        },
        RawMultisection::GraphOnQuartic { p, marked, generator } => {
            let p = poly(&format!("{field}.p"), p)?;
            let elliptic = match (marked, generator) {
                (None, None) => None,
                (Some(m), Some([z, w])) => {
                    let marked = match m {
                        RawMarked::InfinityBranch { root } => MarkedPoint::InfinityBranch {
                            root: rat(&format!("{field}.marked.root"), root)?,
                        },
                        RawMarked::Finite { z, w } => MarkedPoint::Finite {
                            z: rat(&format!("{field}.marked.z"), z)?,
                            w: rat(&format!("{field}.marked.w"), w)?,
                        },
                    };
                    let generator = QuarticPoint::Affine(
                        rat(&format!("{field}.generator[0]"), z)?,
                        rat(&format!("{field}.generator[1]"), w)?,
                    );
                    Some(EllipticParam { marked, generator })
                }
                _ => return Err(invalid(field, "marked and generator must be given together")),
            };
            Multisection::GraphOnQuartic { p, elliptic }
        }
        RawMultisection::Split { sections } => Multisection::SplitList(
            sections
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    Ok(match s {
                        RawSection::Zero => Section::Zero,
                        RawSection::Affine { x, y } => Section::Affine {
                            x: ratfn(&format!("{field}.sections[{i}].x"), x)?,
                            y: ratfn(&format!("{field}.sections[{i}].y"), y)?,
                        },
                    })
                })
                .collect::<Result<_, CliError>>()?,
        ),
    })
}

/// `t` may be `"inf"`, in which case `z` is the chart coordinate `z/t²`.
fn through_point(t: &str, z: &str) -> Result<CurvePoint, CliError> {
    let t = if t == "inf" {
        ParamValue::Infinity
    } else {
        ParamValue::Rational(rat("enriques.through[0]", t)?)
    };
    Ok(CurvePoint {
        t,
        z: ParamValue::Rational(rat("enriques.through[1]", z)?),
    })
}

/// Parses and validates a JSON run specification.
pub fn parse_spec(text: &str) -> Result<RunSpec, CliError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;

    let p = raw.params;
    let d = Params::default();
    let params = Params {
        height_bound: p.height_bound.unwrap_or(d.height_bound),
        k_max: p.k_max.unwrap_or(d.k_max),
        torsion_bound: p.torsion_bound.unwrap_or(d.torsion_bound),
        m_max: p.m_max.unwrap_or(d.m_max),
        samples: p
            .samples
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, s)| rat(&format!("params.samples[{i}]"), s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?,
    };

    let e = raw.enriques;
    let pair = |field: String, [a, b]: &[String; 2]| -> Result<(Rat, Rat), CliError> {
        Ok((rat(&format!("{field}[0]"), a)?, rat(&format!("{field}[1]"), b)?))
    };
    let enriques = EnriquesParams {
        base_points: e
            .base_points
            .iter()
            .enumerate()
            .map(|(i, v)| pair(format!("enriques.base_points[{i}]"), v))
            .collect::<Result<_, _>>()?,
        through: e.through.as_ref().map(|[t, z]| through_point(t, z)).transpose()?,
        allow_twist: e.allow_twist,
        sections: e
            .sections
            .iter()
            .enumerate()
            .map(|(i, [c0, c1, c2])| {
                let f = format!("enriques.sections[{i}]");
                Ok(SectionConic::new(
                    rat(&format!("{f}[0]"), c0)?,
                    rat(&format!("{f}[1]"), c1)?,
                    rat(&format!("{f}[2]"), c2)?,
                ))
            })
            .collect::<Result<_, CliError>>()?,
    };

    let cone = match &raw.cone_quartic {
        Some(map) => {
            let mut terms = Vec::new();
            for (k, v) in map {
                terms.push((k.as_str(), rat(&format!("cone_quartic.{k}"), v)?));
            }
            let b = ConeQuartic::from_terms(terms).map_err(|e| invalid("cone_quartic", e))?;
            let fd = restrict_quartic_to_cone(&b).map_err(|e| invalid("cone_quartic", e))?;
            Some((b, fd))
        }
        None => None,
    };

    let mut fibration = match (&raw.a, &raw.b) {
        (Some(a), Some(b)) => {
            let a = ratfn("a", a)?;
            let b = ratfn("b", b)?;
            Some(FibrationModel::new(a, b).map_err(|e| match e {
                FibrationError::SingularGenericFiber => invalid("fibration", "singular generic fiber"),
                other => invalid("fibration", other),
            })?)
        }
        (None, None) => None,
        _ => return Err(invalid("fibration", "both `a` and `b` are required")),
    };
    let wants_model = raw.multisection.is_some() || raw.family.is_some();
    if fibration.is_none() {
        if let Some((_, fd)) = &cone {
            match k3_weierstrass_model(fd, enriques.allow_twist) {
                Ok(k3) => fibration = Some(k3.fibration),
                Err(e) if wants_model => return Err(invalid("cone_quartic", e)),
                Err(_) => {}
            }
        }
    }

    let multisection = raw.multisection.as_ref().map(|m| build_multisection("multisection", m)).transpose()?;
    let family = raw
        .family
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, m)| build_multisection(&format!("family[{i}]"), m))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(f) = &fibration {
        if let Some(m) = &multisection {
            m.validate(f).map_err(|e| invalid("multisection", e))?;
        }
        for (i, m) in family.iter().enumerate() {
            m.validate(f).map_err(|e| invalid(format!("family[{i}]"), e))?;
        }
    } else if wants_model {
        return Err(invalid("fibration", "a multisection needs `a`, `b` or a cone_quartic block"));
    }

    Ok(RunSpec {
        fibration,
        multisection,
        family,
        params,
        cone,
        enriques,
        out_dir: raw.output.and_then(|o| o.dir).map(PathBuf::from),
    })
}
