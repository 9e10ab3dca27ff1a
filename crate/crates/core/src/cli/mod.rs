//! Command dispatch and report emission.
//!
//! A run reads a [`JobConfig`], resolves the parameters, picks a coefficient
//! representation and delegates to the engine. The report is a list of
//! `key: value` lines in canonical text form followed by a delimited timing
//! block, which is the only part that varies between identical runs.

pub mod config;
pub mod parser;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::dmodcalc::{
    bernstein_sato, characteristic_variety, intersection_presentation, kappa_and_conditions, BernsteinOptions,
    ConditionReport, IntersectionPresentation, Mode,
};
use crate::error::{Error, Result};
use crate::groebner::GbOptions;
use crate::ilc::{
    build_ilc, dual_rank2, render_matrix, solve_integrability_rank2, spair_remainder, CuspFamily, IlcSpec,
};
use crate::logcurve::{build_curve, PlaneCurve};
use crate::ratpoly::{Coeff, CommPoly, Mono, Poly, RatFunc, Rational, VarContext};
use crate::weyl::{WeylContext, WeylOp};

pub use config::{BSpec, JobConfig, Options, ParamEntry, ParamValue, RunMode};
pub use parser::{parse_expression, universal_context, IDENTIFIERS};

/// Names accepted in `[parameters]`, in canonical order.
pub const PARAMETERS: [&str; 4] = ["lambda", "m", "n", "nu"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    VerifyCurve,
    BuildIlc,
    Bfunction,
    Kappa,
    Intersection,
    Charvar,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyCurve => "verify-curve",
            Command::BuildIlc => "build-ilc",
            Command::Bfunction => "bfunction",
            Command::Kappa => "kappa",
            Command::Intersection => "intersection",
            Command::Charvar => "charvar",
        }
    }
}

/// Command-line settings layered over the configuration file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub params: Vec<String>,
    pub degree_bound: Option<u32>,
    pub mode: Option<RunMode>,
    pub k: Option<i64>,
    pub kprime: Option<i64>,
    pub certificate: bool,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut JobConfig) -> Result<()> {
        for p in &self.params {
            cfg.set_param(p)?;
        }
        let o = &mut cfg.options;
        o.degree_bound = self.degree_bound.or(o.degree_bound);
        o.mode = self.mode.or(o.mode);
        o.k = self.k.or(o.k);
        o.kprime = self.kprime.or(o.kprime);
        if self.certificate {
            o.certificate = Some(true);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Command,
    pub entries: Vec<(String, String)>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The report without the timing block.
    pub fn body(&self) -> String {
        let mut out = format!("command: {}\n", self.command.name());
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    pub fn text(&self) -> String {
        format!("{}--- timing ---\nelapsed_ms: {:.3}\n--- end timing ---\n", self.body(), self.elapsed_ms)
    }

    pub fn json(&self) -> Value {
        let results: Map<String, Value> =
            self.entries.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        json!({ "command": self.command.name(), "results": results, "timing": { "elapsed_ms": self.elapsed_ms } })
    }
}

/// Parameters after resolution against the universal context.
struct Params {
    uctx: Arc<WeylContext>,
    declared: BTreeMap<String, ParamValue>,
    /// Universal slot and value of every fixed parameter.
    subst: Vec<(usize, Poly<Rational>)>,
    free: Vec<&'static str>,
}

impl Params {
    fn resolve(cfg: &JobConfig) -> Result<Self> {
        let uctx = universal_context();
        let mut declared = BTreeMap::new();
        for (name, entry) in &cfg.parameters {
            if !PARAMETERS.contains(&name.as_str()) {
                return Err(Error::Config(format!("unknown parameter `{name}` (expected one of lambda, m, n, nu)")));
            }
            declared.insert(name.clone(), entry.value());
        }
        let slot = |name: &str| uctx.index_of(name).expect("universal name");
        let mut subst = Vec::new();
        let mut free = Vec::new();
        for name in PARAMETERS {
            match declared.get(name) {
                Some(ParamValue::Symbolic) => free.push(name),
                Some(ParamValue::Number(q)) => subst.push((slot(name), Poly::constant(q.clone()))),
                _ => {}
            }
        }
        let mut exprs = Vec::new();
        for name in PARAMETERS {
            if let Some(ParamValue::Expression(src)) = declared.get(name) {
                let op = parse_expression(src, &uctx)?;
                for v in support_names(&op) {
                    match declared.get(v.as_str()) {
                        Some(ParamValue::Symbolic) | Some(ParamValue::Number(_)) => {}
                        Some(ParamValue::Expression(_)) => {
                            return Err(Error::Config(format!(
                                "parameter `{name}` refers to the expression parameter `{v}`"
                            )));
                        }
                        None if PARAMETERS.contains(&v.as_str()) => return Err(Error::UnknownIdentifier(v)),
                        None => {
                            return Err(Error::Config(format!(
                                "parameter `{name}` may only use other parameters, found `{v}`"
                            )))
                        }
                    }
                }
                let mut p = op.poly().clone();
                for (i, v) in &subst {
                    p = p.substitute(*i, v);
                }
                exprs.push((slot(name), p));
            }
        }
        subst.extend(exprs);
        Ok(Params { uctx, declared, subst, free })
    }

    fn flatten(&self, op: &WeylOp) -> Result<Poly<Rational>> {
        for v in support_names(op) {
            if v == "s" {
                return Err(Error::Config("`s` is reserved for the functional equation".into()));
            }
            if PARAMETERS.contains(&v.as_str()) && !self.declared.contains_key(&v) {
                return Err(Error::UnknownIdentifier(v));
            }
        }
        let mut p = op.poly().clone();
        for (i, v) in &self.subst {
            p = p.substitute(*i, v);
        }
        Ok(p)
    }

    fn lower<C: Coeff>(&self, src: &str, target: &Arc<WeylContext>) -> Result<WeylOp<C>> {
        let op = parse_expression(src, &self.uctx)?;
        let p = self.flatten(&op)?;
        WeylOp::from_poly(&self.uctx, p).specialize_into::<C>(target, &[])
    }

    /// Numeric value of a parameter; undeclared parameters count as 0.
    fn numeric(&self, name: &str) -> Result<Option<Rational>> {
        if !self.declared.contains_key(name) {
            return Ok(Some(Rational::zero()));
        }
        let op = WeylOp::<Rational>::var(&self.uctx, name)?;
        let p = self.flatten(&op)?;
        Ok(p.is_constant().then(|| p.constant_term()))
    }

    fn describe(&self) -> String {
        if self.declared.is_empty() {
            return "none".into();
        }
        let parts: Vec<String> = PARAMETERS
            .iter()
            .filter_map(|n| {
                self.declared.get(*n).map(|v| match v {
                    ParamValue::Symbolic => format!("{n} = symbolic"),
                    ParamValue::Number(q) => format!("{n} = {q}"),
                    ParamValue::Expression(e) => format!("{n} = {e}"),
                })
            })
            .collect();
        parts.join(", ")
    }
}

fn support_names(op: &WeylOp) -> Vec<String> {
    let support = op.poly().support();
    op.ctx().var_names().enumerate().filter(|(i, _)| support & (1 << i) != 0).map(|(_, n)| n.clone()).collect()
}

/// Coefficient representation actually used for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Repr {
    Central,
    Generic,
    Numeric,
}

impl Repr {
    fn name(self) -> &'static str {
        match self {
            Repr::Central => "symbolic",
            Repr::Generic => "generic",
            Repr::Numeric => "specialized",
        }
    }
}

fn parse_curve(cfg: &JobConfig, params: &Params) -> Result<PlaneCurve> {
    let [w1, w2] = cfg.curve.weights;
    let weight = |w: i64| u32::try_from(w).ok().filter(|&w| w > 0);
    let (Some(w1), Some(w2)) = (weight(w1), weight(w2)) else {
        return Err(Error::Config(format!("weights must be positive integers, got [{w1}, {w2}]")));
    };
    let uctx = &params.uctx;
    let h = parse_expression(&cfg.curve.h, uctx)?;
    let allowed = (1u32 << uctx.x_slot(0)) | (1u32 << uctx.x_slot(1));
    if !h.poly().supported_in(allowed) {
        let others: Vec<String> = support_names(&h).into_iter().filter(|n| n != "x1" && n != "x2").collect();
        return Err(Error::InvalidCurve(format!("h must be a polynomial in x1, x2 (found {})", others.join(", "))));
    }
    let vctx = VarContext::new(&["x1", "x2"], &[])?;
    let terms = h
        .poly()
        .terms()
        .iter()
        .map(|(m, c)| (Mono::from_exps(&[m.exp(uctx.x_slot(0)), m.exp(uctx.x_slot(1))]), c.clone()));
    build_curve(w1, w2, &CommPoly::new(&vctx, Poly::from_terms(terms)))
}

/// Runs `command` on `cfg` and assembles the report.
pub fn run(command: Command, cfg: &JobConfig) -> Result<Report> {
    let start = Instant::now();
    let params = Params::resolve(cfg)?;
    let requested =
        cfg.options.mode.unwrap_or(if params.free.is_empty() { RunMode::Specialized } else { RunMode::Symbolic });
    if requested == RunMode::Specialized && !params.free.is_empty() {
        return Err(Error::Config(format!("specialized mode needs numeric values for: {}", params.free.join(", "))));
    }
    let repr = match requested {
        _ if params.free.is_empty() => Repr::Numeric,
        RunMode::Generic => Repr::Generic,
        RunMode::Symbolic if matches!(command, Command::Intersection | Command::Charvar) => Repr::Generic,
        _ => Repr::Central,
    };
    let mut entries =
        vec![("mode".to_string(), repr.name().to_string()), ("parameters".to_string(), params.describe())];
    let job = Job { cfg, params: &params };
    let body = match repr {
        Repr::Central => job.run::<Rational>(command, WeylContext::plane(&params.free, &[]))?,
        Repr::Generic => job.run::<RatFunc>(command, WeylContext::plane(&[], &params.free))?,
        Repr::Numeric => job.run::<Rational>(command, WeylContext::plane(&[], &[]))?,
    };
    entries.extend(body);
    Ok(Report { command, entries, elapsed_ms: start.elapsed().as_secs_f64() * 1e3 })
}

struct Job<'a> {
    cfg: &'a JobConfig,
    params: &'a Params,
}

type Entries = Vec<(String, String)>;

fn push(out: &mut Entries, key: &str, value: impl ToString) {
    out.push((key.to_string(), value.to_string()));
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        return "none".into();
    }
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn render_genericity(ctx: &WeylContext, polys: &[Poly<Rational>]) -> String {
    if polys.is_empty() {
        return "none".into();
    }
    polys.iter().map(|p| format!("{} != 0", p.render(ctx.params(), &[]))).collect::<Vec<_>>().join(", ")
}

impl Job<'_> {
    fn options(&self) -> &Options {
        &self.cfg.options
    }

    fn gb_options(&self) -> GbOptions {
        GbOptions { degree_bound: self.options().degree_bound.unwrap_or(60), ..GbOptions::default() }
    }

    fn bernstein_options(&self) -> BernsteinOptions {
        BernsteinOptions { gb: self.gb_options(), ..BernsteinOptions::default() }
    }

    fn mode(&self) -> Result<Mode> {
        Ok(match (self.params.numeric("lambda")?, self.params.numeric("nu")?) {
            (Some(lambda), Some(nu)) => Mode::Specialized { lambda, nu },
            _ => Mode::Symbolic,
        })
    }

    fn spec<C: Coeff>(&self, curve: &PlaneCurve, ctx: &Arc<WeylContext>) -> Result<IlcSpec<C>> {
        let conn = &self.cfg.connection;
        let n = usize::try_from(conn.n).ok().filter(|&n| n >= 1);
        let n = n.ok_or_else(|| Error::Config(format!("connection rank must be at least 1, got {}", conn.n)))?;
        let a = self.params.lower::<C>(&conn.a, ctx)?;
        let b = match &conn.b {
            BSpec::Keyword(k) if k == "solve" => {
                if n != 2 {
                    return Err(Error::UnsupportedRank(n));
                }
                let e = self.params.lower::<C>(&conn.e, ctx)?;
                let (b1, b0) = solve_integrability_rank2(curve, &a, &e)?;
                vec![b0, b1]
            }
            BSpec::Keyword(k) => return Err(Error::Config(format!("b must be \"solve\" or a list, got \"{k}\""))),
            BSpec::List(items) => items.iter().map(|s| self.params.lower::<C>(s, ctx)).collect::<Result<_>>()?,
        };
        build_ilc(curve, n, &a, &b)
    }

    /// The cusp family member matching the configuration, if any.
    fn family<C: Coeff>(&self, spec: &IlcSpec<C>) -> Result<Option<CuspFamily<C>>> {
        let conn = &self.cfg.connection;
        let complete = PARAMETERS.iter().all(|p| self.params.declared.contains_key(*p));
        if !complete || !spec.curve().is_cusp() || spec.rank() != 2 || conn.b != BSpec::Keyword("solve".into()) {
            return Ok(None);
        }
        let ctx = spec.ctx();
        let v = |name: &str| self.params.lower::<C>(name, ctx);
        let fam = CuspFamily { lambda: v("lambda")?, m: v("m")?, n: v("n")?, nu: v("nu")? };
        let e = self.params.lower::<C>(&conn.e, ctx)?;
        Ok((fam.a() == *spec.a() && fam.e() == e).then_some(fam))
    }

    fn run<C: Coeff>(&self, command: Command, ctx: Arc<WeylContext>) -> Result<Entries> {
        let curve = parse_curve(self.cfg, self.params)?;
        let mut out = Entries::new();
        if command == Command::VerifyCurve {
            self.verify_curve(&curve, &mut out);
            return Ok(out);
        }
        let spec = self.spec::<C>(&curve, &ctx)?;
        let family = self.family(&spec)?;
        match command {
            Command::VerifyCurve => unreachable!(),
            Command::BuildIlc => self.build_ilc(&spec, family.as_ref(), &mut out)?,
            Command::Bfunction => self.bfunction(&spec, &mut out)?,
            Command::Kappa => self.kappa(&spec, family.as_ref(), &mut out)?,
            Command::Intersection => {
                let pres = self.intersection(&spec, family.as_ref(), &mut out)?;
                self.charvar(&pres, &mut out)?;
            }
            Command::Charvar => {
                let (k, kprime) = self.twists();
                let pres = intersection_presentation(&spec, k, kprime, family.as_ref(), &self.gb_options())?;
                push(&mut out, "k", k);
                push(&mut out, "kprime", kprime);
                self.charvar(&pres, &mut out)?;
            }
        }
        Ok(out)
    }

    fn twists(&self) -> (i64, i64) {
        (self.options().k.unwrap_or(1), self.options().kprime.unwrap_or(1))
    }

    fn verify_curve(&self, curve: &PlaneCurve, out: &mut Entries) {
        let (w1, w2) = curve.weights();
        push(out, "h", curve.h());
        push(out, "weights", format!("({w1}, {w2})"));
        push(out, "delta1", curve.delta1());
        push(out, "delta2", curve.delta2());
        push(out, "saito_determinant", curve.saito_determinant());
        let ok = curve.saito_determinant() == curve.h().scale_i64(curve.omega_h() as i64);
        let verdict = if ok { "OK" } else { "FAILED" };
        push(out, "curve", format!("c = {}, omega_h = {}, Saito determinant {verdict}", curve.c(), curve.omega_h()));
    }

    fn build_ilc<C: Coeff>(&self, spec: &IlcSpec<C>, family: Option<&CuspFamily<C>>, out: &mut Entries) -> Result<()> {
        push(out, "rank", spec.rank());
        push(out, "a", spec.a());
        for (i, b) in spec.b().iter().enumerate() {
            push(out, &format!("b{i}"), b);
        }
        push(out, "A1", render_matrix(spec.a1()));
        push(out, "A2", render_matrix(spec.a2()));
        push(out, "integrability_residual", "0");
        push(out, "g1", spec.g1());
        push(out, "g2", spec.g2());
        push(out, "buchberger_remainder", spair_remainder(spec)?);
        push(out, "cusp_family_member", yes_no(family.is_some()));
        if spec.rank() == 2 {
            let dual = dual_rank2(spec)?;
            push(out, "dual_a", dual.a());
            push(out, "dual_b0", &dual.b()[0]);
            push(out, "dual_b1", &dual.b()[1]);
        }
        Ok(())
    }

    fn bfunction<C: Coeff>(&self, spec: &IlcSpec<C>, out: &mut Entries) -> Result<()> {
        let r = bernstein_sato(spec, &self.mode()?, &self.bernstein_options())?;
        push(out, "method", format!("{:?}", r.method).to_lowercase());
        push(out, "B(s)", r.factored_text());
        push(out, "B(s)_expanded", &r.b);
        push(out, "degree", r.degree());
        push(out, "roots", join(&r.roots));
        push(out, "genericity_certificate", render_genericity(&r.ctx, &r.genericity));
        push(out, "certificate", if r.verify(spec)? { "verified" } else { "FAILED" });
        if self.options().certificate.unwrap_or(false) {
            push(out, "P", &r.certificate.p);
            push(out, "C", &r.certificate.c);
            push(out, "D", &r.certificate.d);
        }
        Ok(())
    }

    fn kappa<C: Coeff>(&self, spec: &IlcSpec<C>, family: Option<&CuspFamily<C>>, out: &mut Entries) -> Result<()> {
        let mode = self.mode()?;
        let opts = self.bernstein_options();
        let b = bernstein_sato(spec, &mode, &opts)?;
        let report = kappa_and_conditions(&b, spec, family, &mode, &opts)?;
        push(out, "B(s)", b.factored_text());
        self.conditions(&report, out);
        Ok(())
    }

    fn conditions(&self, r: &ConditionReport, out: &mut Entries) {
        push(out, "roots", join(&r.roots));
        push(out, "dual_roots", join(&r.dual_roots));
        if let Some(d) = r.dual_is_family_member {
            push(out, "dual_is_family_member", yes_no(d));
        }
        for (i, c) in r.rho.iter().enumerate() {
            push(out, &format!("rho_F_k[{}]", i + 1), c);
        }
        for (i, c) in r.rho_dual.iter().enumerate() {
            push(out, &format!("rho_Fdual_kprime[{}]", i + 1), c);
        }
        if let Some(n) = &r.numeric {
            let tau = |t: Option<i64>| t.map_or("+inf".to_string(), |t| t.to_string());
            push(out, "tau", tau(n.tau));
            push(out, "tau_dual", tau(n.tau_dual));
            let (k, kprime) = self.twists();
            push(out, &format!("rho_F_k iso at k = {k}"), yes_no(r.rho_holds(&n.lambda, &n.nu, k)));
            push(
                out,
                &format!("rho_Fdual_kprime iso at k' = {kprime}"),
                yes_no(r.rho_dual_holds(&n.lambda, &n.nu, kprime)),
            );
            for (label, holds) in ["i", "ii", "iii", "iv"].iter().zip(n.conditions) {
                push(out, &format!("condition ({label})"), yes_no(holds));
            }
        }
    }

    fn intersection<C: Coeff>(
        &self,
        spec: &IlcSpec<C>,
        family: Option<&CuspFamily<C>>,
        out: &mut Entries,
    ) -> Result<IntersectionPresentation<C>> {
        let (k, kprime) = self.twists();
        let pres = intersection_presentation(spec, k, kprime, family, &self.gb_options())?;
        push(out, "k", k);
        push(out, "kprime", kprime);
        push(out, "K", join(&pres.k_gens));
        push(out, "genericity_certificate", render_genericity(spec.ctx(), &pres.genericity_certificate));
        push(out, "members_verified", yes_no(pres.members_verified));
        push(out, "source_contained", yes_no(pres.source_contained));
        if let Some(cf) = &pres.closed_form {
            push(out, "Q", &cf.q);
            push(out, "Qh_identity", yes_no(cf.identity));
            push(out, "commutator_[Q,g1]=4Q", yes_no(cf.commutator));
            push(out, "K=(g1,Q)", yes_no(cf.equal));
        }
        Ok(pres)
    }

    fn charvar<C: Coeff>(&self, pres: &IntersectionPresentation<C>, out: &mut Entries) -> Result<()> {
        let cv = characteristic_variety(pres)?;
        push(out, "symbol_ideal", join(&cv.symbol_ideal));
        push(out, "conormal_origin_excluded", yes_no(cv.conormal_origin_excluded));
        push(out, "char_variety", cv.components.unwrap_or("unrecognized"));
        push(out, "char_variety_dimension", cv.dimension);
        push(out, "koszul_regular", yes_no(cv.koszul_regular));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(extra: &str) -> JobConfig {
        let text = format!("[curve]\nweights = [3, 2]\nh = \"x1^2 - x2^3\"\n{extra}");
        JobConfig::from_toml(&text).unwrap()
    }

    #[test]
    fn verify_curve_line() {
        let r = run(Command::VerifyCurve, &config("")).unwrap();
        assert_eq!(r.get("curve"), Some("c = 1, omega_h = 6, Saito determinant OK"));
        assert_eq!(r.get("mode"), Some("specialized"));
    }

    #[test]
    fn parameter_errors() {
        let bad = config("[parameters]\nmu = 1\n");
        assert_eq!(run(Command::VerifyCurve, &bad).unwrap_err().exit_code(), 2);
        let undeclared = config("[connection]\na = \"lambda\"\n");
        assert!(matches!(run(Command::BuildIlc, &undeclared), Err(Error::UnknownIdentifier(_))));
        let free = config("[parameters]\nlambda = \"symbolic\"\n[options]\nmode = \"specialized\"\n");
        assert!(matches!(run(Command::VerifyCurve, &free), Err(Error::Config(_))));
        let s = config("[connection]\na = \"s\"\n");
        assert!(matches!(run(Command::BuildIlc, &s), Err(Error::Config(_))));
    }

    #[test]
    fn numeric_bfunction() {
        let cfg = config(
            "[connection]\nn = 2\na = \"lambda + m*x1 + n*x2\"\nb = \"solve\"\ne = \"nu - nu^2\"\n\
             [parameters]\nlambda = 0\nm = 0\nn = 0\nnu = 0\n",
        );
        let r = run(Command::Bfunction, &cfg).unwrap();
        assert_eq!(r.get("B(s)"), Some("(s + 4/3)(s + 7/6)(s + 1)(s + 5/6)"));
        assert_eq!(r.get("certificate"), Some("verified"));
        let k = run(Command::Kappa, &cfg).unwrap();
        assert_eq!(k.get("dual_is_family_member"), Some("yes"));
        assert_eq!(k.get("tau"), Some("-1"));
    }
}
