//! Subcommand handlers. Each returns a JSON result, a short text summary
//! and whether its verdict is positive.

use cashift::homs::{aut_group, dual_hom_search, functional_eq_check, hom_search, SearchOptions};
use cashift::laurent::{
    ca_normalize, collinear_support, constant_points, divide_exact, parse_points, parse_poly,
    univariate_factor, Factorization,
};
use cashift::mixing::{
    default_dilations, horizontal_mixing_check, mixing_scan, nonmixing_certificate, CertificateVerdict,
    PrimitiveSet,
};
use cashift::shift::{
    cylinder_measure, evolve, language_method, render, Budgets, Configuration, CylinderEvent, RenderFormat,
    Window,
};
use cashift::{CaShift, Exponent, LaurentPoly, Shape};
use serde_json::{json, Value};

use crate::config::{Command, Format, RunConfig};
use crate::CliError;

pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub ok: bool,
    pub image: Option<Vec<u8>>,
}

impl Outcome {
    fn new(result: Value, text: String) -> Self {
        Outcome {
            result,
            text,
            ok: true,
            image: None,
        }
    }

    fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn need<'a>(value: &'a Option<String>, flag: &'static str) -> Res<&'a str> {
    value.as_deref().ok_or(CliError::Missing(flag))
}

fn poly(cfg: &RunConfig, text: &str) -> Res<LaurentPoly> {
    Ok(parse_poly(text, cfg.prime()?, cfg.dim())?)
}

fn shift(cfg: &RunConfig, text: &str) -> Res<CaShift> {
    Ok(CaShift::new(poly(cfg, text)?)?)
}

fn points(text: &str) -> Res<Vec<Exponent>> {
    Ok(parse_points(text)?)
}

fn residues(text: &str) -> Res<Vec<u32>> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad residue {v:?} in --values")))
        })
        .collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Event values per offset: given, or `1` at the origin and `0` elsewhere.
fn events(cfg: &RunConfig, offsets: &PrimitiveSet) -> Res<Vec<CylinderEvent>> {
    let values = match &cfg.values {
        Some(v) => residues(v)?,
        None => offsets.points().iter().map(|n| u32::from(n.is_zero())).collect(),
    };
    if values.len() != offsets.len() {
        return Err(CliError::Usage(format!(
            "--values has {} entries for {} offsets",
            values.len(),
            offsets.len()
        )));
    }
    Ok(values
        .into_iter()
        .map(|v| CylinderEvent::single_cell(cfg.dim(), v, cfg.prime()?))
        .collect::<cashift::Result<Vec<_>>>()?)
}

pub fn dispatch(cfg: &RunConfig) -> Res<Outcome> {
    if cfg.format == Format::Pgm && cfg.command != Command::Evolve {
        return Err(CliError::Usage(
            "--format pgm is only available for evolve".into(),
        ));
    }
    let budgets = Budgets::default();
    match cfg.command {
        Command::Normalize => normalize(cfg),
        Command::Evolve => evolve_cmd(cfg),
        Command::Language => language_cmd(cfg, &budgets),
        Command::Measure => measure(cfg, &budgets),
        Command::MixingScan => scan(cfg, &budgets),
        Command::NonmixCert => certificate(cfg, &budgets),
        Command::HorizontalCheck => horizontal(cfg, &budgets),
        Command::HomSearch => homs(cfg, &budgets),
        Command::DualHoms => duals(cfg),
        Command::Aut => aut(cfg),
        Command::Collinear => collinear(cfg),
        Command::Factor => factor(cfg),
        Command::Constants => constants(cfg),
    }
}

fn normalize(cfg: &RunConfig) -> Res<Outcome> {
    let a = poly(cfg, need(&cfg.poly, "--poly")?)?;
    let (ca, t) = ca_normalize(&a)?;
    let text = format!("phi = {}\ntransform: {t}", ca.phi());
    Ok(Outcome::new(
        json!({
            "phi": ca.phi(),
            "annihilator": ca.annihilator(),
            "transform": t.to_string(),
            "inverted_axes": t.inverted_axes(),
            "unit": t.unit,
            "shift": t.shift,
        }),
        text,
    ))
}

fn evolve_cmd(cfg: &RunConfig) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let row = residues(need(&cfg.values, "--values")?)?;
    let top = Configuration::new(
        Window::new((0..row.len() as i64).map(|i| Exponent::from([i, 0]))),
        row,
        cfg.prime()?,
    )?;
    let grid = evolve(&ca, &top, cfg.steps)?;
    let text = String::from_utf8(render(&grid, RenderFormat::Text)).expect("ascii");
    let mut out = Outcome::new(
        json!({
            "x_min": grid.x_min,
            "top_time": grid.top_time,
            "width": grid.width(),
            "height": grid.height(),
            "rows": grid.rows,
        }),
        text,
    );
    if cfg.format == Format::Pgm {
        out.image = Some(render(&grid, RenderFormat::Pgm));
    }
    Ok(out)
}

fn language_cmd(cfg: &RunConfig, budgets: &Budgets) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let window = Window::new(points(need(&cfg.shape, "--shape")?)?);
    let method = language_method(&cfg.method)
        .ok_or_else(|| CliError::Usage(format!("unknown language method {:?}", cfg.method)))?;
    let lang = method.language(&ca, &window, budgets)?;
    let card = lang.cardinality();
    let elements: Option<Vec<Vec<u32>>> = card
        .filter(|&n| n <= 256)
        .map(|n| (0..n as u64).map(|i| lang.element(i)).collect());
    let text = format!(
        "window {window}: rank {}, {} elements",
        lang.rank(),
        card.map_or_else(|| format!("{}^{}", cfg.p, lang.rank()), |n| n.to_string())
    );
    Ok(Outcome::new(
        json!({
            "method": method.name(),
            "window": window,
            "rank": lang.rank(),
            "cardinality": card,
            "pivot_cells": lang.pivot_cells(),
            "basis": lang.basis().rows(),
            "elements": elements,
        }),
        text,
    ))
}

fn measure(cfg: &RunConfig, budgets: &Budgets) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let cells = points(need(&cfg.shape, "--shape")?)?;
    let values = residues(need(&cfg.values, "--values")?)?;
    if cells.len() != values.len() {
        return Err(CliError::Usage(format!(
            "--values has {} entries for {} cells",
            values.len(),
            cells.len()
        )));
    }
    let p = cfg.prime()?;
    let config = Configuration::from_pairs(cells.into_iter().zip(values), p)?;
    let ev = CylinderEvent::new(config, Exponent::zero(cfg.dim()));
    let m = cylinder_measure(&ca, &[ev], budgets)?;
    Ok(Outcome::new(
        json!({ "measure": m, "value": m.display(p) }),
        format!("measure {}", m.display(p)),
    ))
}

fn offsets(cfg: &RunConfig, ca: &CaShift) -> Res<PrimitiveSet> {
    match &cfg.shape {
        Some(s) => Ok(PrimitiveSet::new(points(s)?)?),
        None => Ok(PrimitiveSet::from_shape(&ca.shape())?.0),
    }
}

fn dilations(cfg: &RunConfig) -> Res<Vec<i64>> {
    match &cfg.dilations {
        Some(text) => text
            .split(',')
            .map(|m| {
                m.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad dilation {m:?}")))
            })
            .collect(),
        None => Ok(default_dilations(cfg.prime()?, cfg.mmax)),
    }
}

fn scan_text(report: &cashift::mixing::DilationReport, p: cashift::Prime) -> String {
    let mut lines = vec![format!("product {}", report.product.display(p))];
    for e in &report.entries {
        let mark = if e.equal { "=" } else { "!=" };
        lines.push(format!(
            "m={:<6} joint {} {mark} product",
            e.m,
            e.joint.display(p)
        ));
    }
    lines.join("\n")
}

fn scan(cfg: &RunConfig, budgets: &Budgets) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let offsets = offsets(cfg, &ca)?;
    let evs = events(cfg, &offsets)?;
    let report = mixing_scan(&ca, &evs, &offsets, &dilations(cfg)?, budgets)?;
    let text = scan_text(&report, cfg.prime()?);
    Ok(Outcome::new(to_json(&report), text))
}

fn certificate(cfg: &RunConfig, budgets: &Budgets) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let r = poly(cfg, need(&cfg.r, "--r")?)?;
    let rep = nonmixing_certificate(&ca, &r, cfg.jmax, budgets)?;
    let ok = rep.verdict == CertificateVerdict::NonMixingWitnessed;
    let text = format!(
        "Q = {}\noffsets {}\n{}\nverdict: {}",
        rep.q,
        Shape::from_points(rep.scan.offsets.points().iter().cloned()),
        scan_text(&rep.scan, cfg.prime()?),
        if ok {
            "non-mixing-witnessed"
        } else {
            "not-witnessed"
        }
    );
    Ok(Outcome::new(to_json(&rep), text).verdict(ok))
}

fn horizontal(cfg: &RunConfig, budgets: &Budgets) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let offsets = PrimitiveSet::new(points(need(&cfg.shape, "--shape")?)?)?;
    let evs = events(cfg, &offsets)?;
    let rep = horizontal_mixing_check(&ca, &offsets, &evs, cfg.mmax, budgets)?;
    let text = match rep.m0 {
        Some(m0) => format!(
            "joint = product = {} for all tested m >= {m0} (m <= {})",
            rep.scan.product.display(cfg.prime()?),
            cfg.mmax
        ),
        None => format!("no exact agreement up to m = {}", cfg.mmax),
    };
    let ok = rep.m0.is_some();
    Ok(Outcome::new(to_json(&rep), text).verdict(ok))
}

fn homs(cfg: &RunConfig, budgets: &Budgets) -> Res<Outcome> {
    let ca_p = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let ca_q = shift(cfg, need(&cfg.psi, "--psi")?)?;
    let shape = Shape::from_points(points(need(&cfg.shape, "--shape")?)?);
    let enumerator = cashift::homs::rule_enumerator(&cfg.enumerator)
        .ok_or_else(|| CliError::Usage(format!("unknown rule enumerator {:?}", cfg.enumerator)))?;
    let opts = SearchOptions {
        budget: cfg.budget as u128,
        enumerator: enumerator.name(),
        budgets: *budgets,
    };
    let res = hom_search(&ca_p, &ca_q, &shape, &opts)?;
    let mut labels = Vec::new();
    let mut rules = Vec::new();
    let mut functional_ok = true;
    for (i, found) in res.rules.iter().enumerate() {
        let label = if found.rule.is_zero() {
            "zero".to_string()
        } else if let Some(r) = &found.dual {
            format!("multiply by {r}")
        } else {
            format!("non-additive #{i}")
        };
        let fe = functional_eq_check(&found.rule, &ca_p, &ca_q, cfg.trials, cfg.seed)?;
        functional_ok &= fe.holds;
        let mut entry = to_json(found);
        entry["label"] = json!(label);
        entry["functional_equation"] = to_json(&fe);
        labels.push(label);
        rules.push(entry);
    }
    let ok = res.consistent && res.all_additive() && functional_ok;
    let mut result = to_json(&res);
    result["rules"] = json!(rules);
    result["summary"] = json!(labels);
    let text = format!(
        "{} equivariant rule(s) on {shape} among {} candidates\n{}",
        labels.len(),
        res.candidates,
        labels.join("\n")
    );
    Ok(Outcome::new(result, text).verdict(ok))
}

fn duals(cfg: &RunConfig) -> Res<Outcome> {
    let ca_p = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let ca_q = shift(cfg, need(&cfg.psi, "--psi")?)?;
    let bound = Shape::from_points(points(need(&cfg.shape, "--shape")?)?);
    let found = dual_hom_search(&ca_p, &ca_q, &bound, cfg.budget as u128)?;
    let classes: Vec<String> = found.iter().map(|h| h.representative.to_string()).collect();
    let text = classes.join("\n");
    Ok(Outcome::new(
        json!({ "classes": classes, "details": found }),
        text,
    ))
}

fn factor_hint(cfg: &RunConfig, phi: &LaurentPoly) -> Res<Option<Factorization>> {
    let Some(text) = &cfg.factors else { return Ok(None) };
    let p = cfg.prime()?;
    let mut counted: Vec<(LaurentPoly, u32)> = Vec::new();
    for part in text.split(';') {
        let f = poly(cfg, part)?;
        match counted.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += 1,
            None => counted.push((f, 1)),
        }
    }
    let product = counted
        .iter()
        .fold(LaurentPoly::one(p, cfg.dim()), |acc, (f, k)| {
            &acc * &f.pow(*k as u64)
        });
    let rest = divide_exact(phi, &product)
        .filter(LaurentPoly::is_monomial)
        .ok_or_else(|| CliError::Usage("--factors do not multiply to phi up to a monomial".into()))?;
    let (monomial, unit) = rest
        .terms()
        .next()
        .map(|(e, c)| (e.clone(), c))
        .expect("monomial");
    Ok(Some(Factorization {
        unit,
        monomial,
        factors: counted,
    }))
}

fn aut(cfg: &RunConfig) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let hint = factor_hint(cfg, ca.phi())?;
    let desc = aut_group(&ca, hint.as_ref())?;
    let gens: Vec<String> = desc.free_generators.iter().map(|g| g.unit.to_string()).collect();
    let text = format!(
        "torsion Z/{} generated by {}\nfree rank {}: {}",
        desc.torsion_order,
        desc.torsion_generator,
        desc.rank,
        gens.join(", ")
    );
    let ok = desc.free_generators.iter().all(|g| g.verified);
    Ok(Outcome::new(to_json(&desc), text).verdict(ok))
}

fn collinear(cfg: &RunConfig) -> Res<Outcome> {
    let a = poly(cfg, need(&cfg.poly, "--poly")?)?;
    let found = collinear_support(&a);
    let text = match &found {
        Some((m, g)) => format!("collinear along {m} with step {g}"),
        None => "not collinear".to_string(),
    };
    Ok(Outcome::new(
        json!({
            "collinear": found.is_some(),
            "direction": found.as_ref().map(|f| &f.0),
            "step": found.as_ref().map(|f| f.1),
        }),
        text,
    ))
}

fn factor(cfg: &RunConfig) -> Res<Outcome> {
    let a = poly(cfg, need(&cfg.poly, "--poly")?)?;
    let fac = univariate_factor(&a)?;
    let verified = fac.product(cfg.prime()?) == a;
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(f, k)| json!({ "factor": f, "multiplicity": k }))
        .collect();
    let text = fac
        .factors
        .iter()
        .map(|(f, k)| {
            if *k == 1 {
                format!("({f})")
            } else {
                format!("({f})^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Outcome::new(
        json!({
            "unit": fac.unit,
            "monomial": fac.monomial,
            "factors": factors,
            "irreducible": fac.is_irreducible(),
            "product_verified": verified,
        }),
        format!("{} * x^{} * {text}", fac.unit, fac.monomial),
    ))
}

fn constants(cfg: &RunConfig) -> Res<Outcome> {
    let ca = shift(cfg, need(&cfg.phi, "--phi")?)?;
    let c = constant_points(&ca);
    let text = format!("constant points: {c:?}");
    Ok(Outcome::new(json!({ "constants": c }), text))
}
