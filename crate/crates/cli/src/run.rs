use std::fmt::Write as _;
use std::path::Path;

use fibdense_core::density::{densify, family_strategy, DensityParams, FamilyOutcome};
use fibdense_core::enriques::{
    bitangent_sweep, k3_weierstrass_model, multisection_from_section, singular_points, BitangentSearch, ConeQuartic,
    RamificationData,
};
use fibdense_core::fibration::{order_probe, ramification_points, FiberType, FibrationError, FibrationModel};
use fibdense_core::{enumerate_rationals, Rat};
use serde::Serialize;
use serde_json::json;

use crate::spec::RunSpec;
use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Command {
    Analyze,
    Densify,
    Probe,
    EnriquesRestrict,
    EnriquesBitangents,
    EnriquesModel,
}

/// Command-line values that take precedence over the spec's `params`.
#[derive(Clone, Copy, Default, Debug)]
pub struct Overrides {
    pub height_bound: Option<u64>,
    pub k_max: Option<u32>,
    pub torsion_bound: Option<u32>,
    pub m_max: Option<u32>,
}

/// What a command produces: a human-readable summary and named files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Artifacts {
    pub summary: String,
    pub files: Vec<(String, String)>,
}

impl Artifacts {
    pub fn file(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, content) in &self.files {
            std::fs::write(dir.join(name), content)?;
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn fibration(spec: &RunSpec) -> Result<&FibrationModel, CliError> {
    spec.fibration.as_ref().ok_or(CliError::Missing("fibration"))
}

fn fiber_row(t: &str, ft: &FiberType) -> String {
    let mut s = format!("b={t}: ordΔ={}, {}", ft.ord_disc, ft.label);
    match ft.irreducible {
        Some(true) => s.push_str(", irreducible"),
        Some(false) => s.push_str(", reducible"),
        None => {}
    }
    s
}

fn analyze(spec: &RunSpec) -> Result<Artifacts, CliError> {
    let f = fibration(spec)?;
    let mut summary = String::new();
    let mut fibers = Vec::new();
    for t in f.singular_parameters() {
        match f.fiber_type(t) {
            Ok(ft) => {
                writeln!(summary, "{}", fiber_row(&t.to_string(), &ft)).unwrap();
                fibers.push(json!({"b": t, "pole": false, "type": ft}));
            }
            Err(FibrationError::PoleAtParameter(_)) => {
                writeln!(summary, "b={t}: pole of the coefficients").unwrap();
                fibers.push(json!({"b": t, "pole": true}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let inf = f.fiber_type_at_infinity();
    writeln!(summary, "{}", fiber_row("inf", &inf)).unwrap();
    fibers.push(json!({"b": "inf", "pole": false, "type": inf}));

    let mut out = json!({
        "a": f.a(),
        "b": f.b(),
        "discriminant": f.discriminant(),
        "singular_fibers": fibers,
    });
    if let Some(m) = &spec.multisection {
        let rep = ramification_points(f, m)?;
        writeln!(summary, "multisection {} of degree {}", m.kind(), m.degree()).unwrap();
        for p in &rep.points {
            let kind = serde_json::to_value(p.kind).unwrap();
            let salient = if p.salient { "salient" } else { "not salient" };
            writeln!(summary, "  ramified over b={}: {}, {salient}", p.t, kind.as_str().unwrap()).unwrap();
        }
        for u in &rep.unresolved {
            writeln!(
                summary,
                "  {} ramification points over an irreducible factor of degree {}, {} salient",
                u.roots,
                u.factor.len() - 1,
                u.salient_roots
            )
            .unwrap();
        }
        out["multisection"] = json!({"kind": m.kind(), "degree": m.degree(), "ramification": rep});
    }
    Ok(Artifacts {
        summary,
        files: vec![("analysis.json".into(), to_json(&out))],
    })
}

fn density_params(spec: &RunSpec) -> DensityParams {
    DensityParams {
        height_bound: spec.params.height_bound,
        k_max: spec.params.k_max,
        torsion_bound: spec.params.torsion_bound,
    }
}

fn run_densify(spec: &RunSpec) -> Result<Artifacts, CliError> {
    let f = fibration(spec)?;
    let params = density_params(spec);
    let (report, json) = match (&spec.multisection, spec.family.is_empty()) {
        (Some(m), _) => {
            let r = densify(f, m, &params)?;
            let j = r.to_json();
            (r, j)
        }
        (None, false) => {
            let outcome = family_strategy(f, &spec.family, &params)?;
            let j = to_json(&outcome);
            match outcome {
                FamilyOutcome::Chosen { report, .. } => (report, j),
                FamilyOutcome::Exhausted { mut reports } => (reports.pop().expect("non-empty family"), j),
            }
        }
        (None, true) => return Err(CliError::Missing("multisection")),
    };
    let summary = format!(
        "fibers attempted: {}\nfibers certified: {}\nfibers torsion: {}\nfibers skipped: {}\npoints: {}\nmax height: {}\n",
        report.fibers_attempted,
        report.fibers_certified,
        report.fibers_torsion,
        report.fibers_skipped,
        report.points_emitted,
        report.max_height_seen
    );
    Ok(Artifacts {
        summary,
        files: vec![("report.json".into(), json), ("points.csv".into(), report.to_csv())],
    })
}

fn probe(spec: &RunSpec) -> Result<Artifacts, CliError> {
    let f = fibration(spec)?;
    let m = spec.multisection.as_ref().ok_or(CliError::Missing("multisection"))?;
    let samples: Vec<Rat> = match &spec.params.samples {
        Some(s) => s.clone(),
        None => enumerate_rationals(spec.params.height_bound),
    };
    let verdict = order_probe(f, m, &samples, spec.params.m_max)?;
    Ok(Artifacts {
        summary: format!("{verdict}\n"),
        files: vec![("probe.json".into(), to_json(&verdict))],
    })
}

fn cone(spec: &RunSpec) -> Result<&(ConeQuartic, RamificationData), CliError> {
    spec.cone.as_ref().ok_or(CliError::Missing("cone_quartic"))
}

fn restrict(spec: &RunSpec) -> Result<Artifacts, CliError> {
    let (b, fd) = cone(spec)?;
    let sing = singular_points(fd)?;
    let mut summary = format!("c4 = {}\ndisc_z F = {}\n", fd.c4(), fd.discriminant().display("t"));
    for p in &sing.points {
        writeln!(summary, "singular point {p}").unwrap();
    }
    for u in &sing.unresolved {
        writeln!(summary, "unresolved factor {u}").unwrap();
    }
    let out = json!({
        "quartic": b,
        "f_rows": fd.f().rows(),
        "f_at_infinity_rows": fd.f_at_infinity().rows(),
        "c4": fd.c4(),
        "discriminant": fd.discriminant(),
        "singular": sing,
    });
    Ok(Artifacts {
        summary,
        files: vec![("restriction.json".into(), to_json(&out))],
    })
}

fn search_summary(s: &BitangentSearch) -> String {
    let lambdas: Vec<String> = s.candidates.iter().map(|c| c.lambda.to_string()).collect();
    format!(
        "{} candidates [{}], {} rejected, {} unresolved roots",
        s.candidates.len(),
        lambdas.join(", "),
        s.rejected.len(),
        s.unresolved_roots
    )
}

fn bitangents(spec: &RunSpec) -> Result<Artifacts, CliError> {
    let (_, fd) = cone(spec)?;
    if spec.enriques.base_points.is_empty() {
        return Err(CliError::Validation {
            field: "enriques.base_points".into(),
            reason: "at least one base point is required".into(),
        });
    }
    let results = bitangent_sweep(fd, &spec.enriques.base_points, spec.enriques.through.as_ref());
    let mut summary = String::new();
    let mut entries = Vec::new();
    for ((t, z), res) in &results {
        match res {
            Ok(s) => {
                writeln!(summary, "P = ({t}, {z}): {}", search_summary(s)).unwrap();
                entries.push(json!({"t0": t, "z0": z, "search": s}));
            }
            Err(e) => {
                writeln!(summary, "P = ({t}, {z}): {e}").unwrap();
                entries.push(json!({"t0": t, "z0": z, "error": e.to_string()}));
            }
        }
    }
    Ok(Artifacts {
        summary,
        files: vec![("bitangents.json".into(), to_json(&entries))],
    })
}

fn model(spec: &RunSpec) -> Result<Artifacts, CliError> {
    let (_, fd) = cone(spec)?;
    let k3 = k3_weierstrass_model(fd, spec.enriques.allow_twist)?;
    let f = &k3.fibration;
    let mut summary = format!("a(t) = {}\nb(t) = {}\n", f.a().display("t"), f.b().display("t"));
    if let Some(c) = &k3.twist {
        writeln!(summary, "quadratic twist by {c}").unwrap();
    }
    let mut sections = Vec::new();
    for s in &spec.enriques.sections {
        let ms = multisection_from_section(fd, s)?;
        let genus = ms.genus.map_or("split".to_string(), |g| g.to_string());
        writeln!(
            summary,
            "section ({}, {}, {}): genus {genus}, {} branch points",
            s.c0, s.c1, s.c2, ms.branch_count
        )
        .unwrap();
        sections.push(ms);
    }
    let out = json!({
        "a": f.a(),
        "b": f.b(),
        "singular_parameters": f.singular_parameters(),
        "model": k3,
        "multisections": sections,
    });
    Ok(Artifacts {
        summary,
        files: vec![("k3_model.json".into(), to_json(&out))],
    })
}

/// Runs one command on a validated spec, with overrides applied first.
pub fn run_command(cmd: Command, spec: &RunSpec, ov: &Overrides) -> Result<Artifacts, CliError> {
    let mut spec = spec.clone();
    let p = &mut spec.params;
    p.height_bound = ov.height_bound.unwrap_or(p.height_bound);
    p.k_max = ov.k_max.unwrap_or(p.k_max);
    p.torsion_bound = ov.torsion_bound.unwrap_or(p.torsion_bound);
    p.m_max = ov.m_max.unwrap_or(p.m_max);
    match cmd {
        Command::Analyze => analyze(&spec),
        Command::Densify => run_densify(&spec),
        Command::Probe => probe(&spec),
        Command::EnriquesRestrict => restrict(&spec),
        Command::EnriquesBitangents => bitangents(&spec),
        Command::EnriquesModel => model(&spec),
    }
}
