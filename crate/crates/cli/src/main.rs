mod args;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use num_bigint::BigInt;
use serde_json::{json, Value};

use args::{
    Cli, Command, FiltCommand, Format, Global, HomologyCommand, IntzCommand, Model, WittCommand,
    WittInput,
};
use hilbert_core::arith::{parse_bigint, parse_zpoly, TruncSeries, ZPoly};
use hilbert_core::filtration::drinfeld::check_degree_bound;
use hilbert_core::filtration::{
    drinfeld_presentation, FilteredModule, FilteredRing, GradedAlgebraPresentation,
};
use hilbert_core::homology::{
    bar_complex, cobar_complex, GradedAugmentedAlgebra, GradedCoalgebra, HomologyRow,
};
use hilbert_core::intz::{pair, parse_intz, IntZElement, IntZJson, TensorJson};
use hilbert_core::json::parse_json;
use hilbert_core::witt::vector::fmt_list;
use hilbert_core::witt::{
    kernel_enumerate, teichmuller, twisted_frobenius, universal_poly, CoeffRing, FrobeniusModel,
    KernelOptions, OpTag, TruncationSet, UniversalCache, WittVector,
};
use hilbert_core::{Error, Result};

/// A rendered result in both formats.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Man { out_dir } = &cli.command {
        return match man(out_dir.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match run(&cli.global, cli.command) {
        Ok(out) => {
            let body = match cli.global.format {
                Format::Text => out.text.trim_end().to_string(),
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn man(out_dir: Option<&Path>) -> std::io::Result<()> {
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            clap_mangen::generate_to(Cli::command(), dir)
        }
        None => {
            let mut out = Vec::new();
            clap_mangen::Man::new(Cli::command()).render(&mut out)?;
            std::io::stdout().write_all(&out)
        }
    }
}

/// 3 when a theorem failed, 2 for everything the user can fix.
fn exit_code(e: &Error) -> u8 {
    if e.is_falsification() {
        3
    } else {
        2
    }
}

fn run(g: &Global, command: Command) -> Result<Output> {
    match command {
        Command::Intz(c) => intz(c),
        Command::Witt(c) => witt(g, c),
        Command::Filt(c) => filt(c),
        Command::Homology(c) => homology(g, c),
        Command::Man { .. } => unreachable!("handled before dispatch"),
    }
}

/// Inline JSON, a path to a file, or plain text.
fn payload(src: &str) -> Result<String> {
    let t = src.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(src.to_string());
    }
    if Path::new(src).is_file() {
        return std::fs::read_to_string(src)
            .map_err(|e| Error::InvalidInput(format!("{src}: {e}")));
    }
    Ok(src.to_string())
}

fn is_json(s: &str) -> bool {
    s.trim_start().starts_with('{')
}

fn intz_arg(src: &str) -> Result<IntZElement> {
    let s = payload(src)?;
    if is_json(&s) {
        let j: IntZJson = serde_json::from_str(&s).map_err(|e| Error::Parse(e.to_string()))?;
        return j.to_element();
    }
    parse_intz(&s)
}

fn intz_out(e: &IntZElement) -> Output {
    Output::new(
        e.to_string(),
        serde_json::to_value(IntZJson::from_element(e)).expect("serializable"),
    )
}

fn intz(c: IntzCommand) -> Result<Output> {
    match c {
        IntzCommand::Mul { f, g } => Ok(intz_out(&intz_arg(&f)?.mult(&intz_arg(&g)?)?)),
        IntzCommand::Comul { f } => {
            let t = intz_arg(&f)?.comult();
            let j = serde_json::to_value(TensorJson::from_tensor(&t)).expect("serializable");
            Ok(Output::new(t.to_string(), j))
        }
        IntzCommand::Antipode { f } => Ok(intz_out(&intz_arg(&f)?.antipode()?)),
        IntzCommand::Eval { f, a, counit } => {
            let f = intz_arg(&f)?;
            let v = match a {
                Some(a) if !counit => f.eval(&parse_bigint(&a)?),
                _ => f.counit(),
            };
            Ok(Output::new(v.to_string(), json!(v.to_string())))
        }
        IntzCommand::Pair {
            f,
            series,
            order,
            group_like,
        } => {
            let f = intz_arg(&f)?;
            let order = order.unwrap_or_else(|| f.degree().map_or(1, |d| d + 1));
            let s = match (series, group_like) {
                (_, Some(a)) => {
                    let base =
                        TruncSeries::from_coeffs("u", order, &[BigInt::from(1), BigInt::from(1)]);
                    base.pow(a)?
                }
                (Some(s), None) => series_arg(&s, order)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let v = pair(&f, &s)?;
            Ok(Output::new(v.to_string(), json!(v.to_string())))
        }
        IntzCommand::Frobtest { f, p } => {
            let e = intz_arg(&f)?;
            if !e.frobenius_mod_p_identity(p)? {
                return Err(Error::Falsified(format!(
                    "({e})^{p} is not congruent to {e} mod {p}"
                )));
            }
            Ok(Output::new("true", json!(true)))
        }
    }
}

fn series_arg(src: &str, order: usize) -> Result<TruncSeries> {
    let s = payload(src)?;
    if is_json(&s) {
        let j: hilbert_core::arith::series::SeriesJson =
            serde_json::from_str(&s).map_err(|e| Error::Parse(e.to_string()))?;
        return j.to_series();
    }
    let p = parse_zpoly(&s)?;
    if let Some(v) = p.vars().iter().find(|v| &***v != "u") {
        return Err(Error::Parse(format!("series must be in u, found {v}")));
    }
    TruncSeries::from_poly(&p, "u", order)
}

fn trunc_arg(s: &str) -> Result<TruncationSet> {
    let elems = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad truncation element {x:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncationSet::new(elems)
}

fn split_coeffs(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).collect()
}

struct WittCtx {
    ring: CoeffRing,
    trunc: TruncationSet,
    show_ghost: bool,
}

impl WittCtx {
    fn vector(&self, coeffs: &str) -> Result<WittVector> {
        let cs = split_coeffs(coeffs);
        if cs.len() != self.trunc.len() {
            return Err(Error::InvalidInput(format!(
                "{} components given for the truncation set {}",
                cs.len(),
                self.trunc
            )));
        }
        WittVector::parse(&self.trunc, &self.ring, &cs)
    }

    fn out(&self, v: &WittVector) -> Output {
        let mut j = v.to_json();
        let mut text = v.fmt_coeffs();
        if self.show_ghost {
            let g = fmt_list(v.ring(), &v.ghost());
            text = format!("{text}\nghost: {g}");
            let gs: Vec<String> = v.ghost().iter().map(|x| v.ring().fmt_elem(x)).collect();
            j["ghost"] = json!(gs);
        }
        Output::new(text, j)
    }
}

/// The input vector plus its context.
fn witt_input(i: &WittInput) -> Result<(WittCtx, Option<WittVector>)> {
    if let Some(v) = &i.vector {
        let v = WittVector::from_json(&parse_json(&payload(v)?)?)?;
        let ctx = WittCtx {
            ring: v.ring().clone(),
            trunc: v.trunc().clone(),
            show_ghost: i.ghost,
        };
        return Ok((ctx, Some(v)));
    }
    let ctx = WittCtx {
        ring: CoeffRing::parse(&i.ring)?,
        trunc: trunc_arg(&i.trunc)?,
        show_ghost: i.ghost,
    };
    let v = i.coeffs.as_deref().map(|c| ctx.vector(c)).transpose()?;
    Ok((ctx, v))
}

fn required(v: Option<WittVector>) -> Result<WittVector> {
    v.ok_or_else(|| Error::InvalidInput("a vector is required: pass --coeffs or --vector".into()))
}

fn model(m: Model) -> FrobeniusModel {
    match m {
        Model::Truncating => FrobeniusModel::Truncating,
        Model::Endomorphism => FrobeniusModel::Endomorphism,
    }
}

fn witt(g: &Global, c: WittCommand) -> Result<Output> {
    match c {
        WittCommand::Add { input, other } => {
            let (ctx, a) = witt_input(&input)?;
            let b = ctx.vector(&other)?;
            Ok(ctx.out(&required(a)?.add(&b)?))
        }
        WittCommand::Mul { input, other } => {
            let (ctx, a) = witt_input(&input)?;
            let b = ctx.vector(&other)?;
            Ok(ctx.out(&required(a)?.mul(&b)?))
        }
        WittCommand::Ghost { input } => {
            let (_, a) = witt_input(&input)?;
            let a = required(a)?;
            let gs: Vec<String> = a.ghost().iter().map(|x| a.ring().fmt_elem(x)).collect();
            Ok(Output::new(
                fmt_list(a.ring(), &a.ghost()),
                json!({ "ghost": gs }),
            ))
        }
        WittCommand::Frob { input, n } => {
            let (ctx, a) = witt_input(&input)?;
            Ok(ctx.out(&required(a)?.frobenius(n)?))
        }
        WittCommand::Versch { input, n, target } => {
            let (ctx, a) = witt_input(&input)?;
            let a = required(a)?;
            let v = match target {
                Some(t) => a.verschiebung(n, &trunc_arg(&t)?)?,
                None => a.verschiebung_default(n)?,
            };
            Ok(ctx.out(&v))
        }
        WittCommand::Teich { input, r } => {
            let (ctx, _) = witt_input(&input)?;
            let r = ctx.ring.parse_elem(&r)?;
            Ok(ctx.out(&teichmuller(r, &ctx.trunc, &ctx.ring)))
        }
        WittCommand::Twisted {
            input,
            n,
            t,
            model: m,
        } => {
            let (ctx, a) = witt_input(&input)?;
            let t = ctx.ring.parse_elem(&t)?;
            Ok(ctx.out(&twisted_frobenius(n, &required(a)?, &t, model(m))?))
        }
        WittCommand::Kernel {
            input,
            n,
            t,
            model: m,
            bound,
        } => {
            let (ctx, _) = witt_input(&input)?;
            let t = ctx.ring.parse_elem(&t)?;
            let opts = KernelOptions {
                bound,
                jobs: g.jobs,
            };
            let m = model(m);
            let k = kernel_enumerate(
                &ctx.trunc,
                &ctx.ring,
                |a| twisted_frobenius(n, a, &t, m),
                true,
                &opts,
            )?;
            let mut text = format!("count\t{}\n", k.len());
            for v in &k {
                text.push_str(&v.fmt_coeffs());
                text.push('\n');
            }
            let vs: Vec<Value> = k
                .iter()
                .map(|v| {
                    json!(v
                        .coeffs()
                        .iter()
                        .map(|x| ctx.ring.fmt_elem(x))
                        .collect::<Vec<_>>())
                })
                .collect();
            Ok(Output::new(text, json!({"count": k.len(), "vectors": vs})))
        }
        WittCommand::Unipoly { op, trunc, n } => {
            let op = OpTag::parse(&op)?;
            let s = trunc_arg(&trunc)?;
            let polys: Vec<(u64, ZPoly)> = match n {
                Some(n) => vec![(n, universal_poly(op, n, &s)?)],
                None => {
                    let fam = UniversalCache::global().get(op, &s)?;
                    fam.target
                        .elements()
                        .iter()
                        .map(|&k| (k, fam.poly(k).expect("component of the target").clone()))
                        .collect()
                }
            };
            let text: Vec<String> = polys.iter().map(|(k, p)| format!("{k}\t{p}")).collect();
            let j: serde_json::Map<String, Value> = polys
                .iter()
                .map(|(k, p)| (k.to_string(), json!(p.to_string())))
                .collect();
            Ok(Output::new(
                text.join("\n"),
                json!({"op": op.to_string(), "trunc": s.elements(), "polys": j}),
            ))
        }
    }
}

fn module_arg(src: &str) -> Result<FilteredModule> {
    let s = payload(src)?;
    if is_json(&s) {
        return FilteredModule::from_json(&parse_json(&s)?);
    }
    let parts: Vec<&str> = s.split(':').collect();
    let int = |x: &str| {
        x.parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad integer {x:?} in {s:?}")))
    };
    match parts.as_slice() {
        ["trivial", p] => Ok(FilteredModule::trivial(int(p)?, 1)),
        ["trivial", p, r] => Ok(FilteredModule::trivial(
            int(p)?,
            int(r)?
                .try_into()
                .map_err(|_| Error::Parse("negative rank".into()))?,
        )),
        ["degree", n] => Ok(FilteredModule::degree_filtration(
            int(n)?
                .try_into()
                .map_err(|_| Error::Parse("negative degree".into()))?,
        )),
        _ => Err(Error::Parse(format!(
            "expected JSON, a file, trivial:P[:RANK] or degree:N, got {s:?}"
        ))),
    }
}

fn module_out(m: &FilteredModule) -> Output {
    let mut text = format!("rank\t{}\nn\trank_fil\n", m.rank());
    for n in m.n_min()..=m.n_max() {
        text.push_str(&format!("{n}\t{}\n", m.rank_at(n)));
    }
    Output::new(text, m.to_json())
}

fn presentation_text(p: &GradedAlgebraPresentation) -> String {
    let labels = p.labels();
    let mut lines = Vec::new();
    for (&(i, j), out) in p.products() {
        let terms: Vec<String> = out
            .iter()
            .map(|(&k, c)| match c.to_string() {
                s if s == "1" => labels[k].clone(),
                s if c.len() > 1 => format!("({s})*{}", labels[k]),
                s => format!("{s}*{}", labels[k]),
            })
            .collect();
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        lines.push(format!("{}*{} = {rhs}", labels[i], labels[j]));
    }
    lines.join("\n")
}

fn presentation_out(p: &GradedAlgebraPresentation, at: Option<i64>) -> Output {
    let p = match at {
        Some(t) => p.specialize(&BigInt::from(t)),
        None => p.clone(),
    };
    Output::new(presentation_text(&p), p.to_json())
}

fn filt(c: FiltCommand) -> Result<Output> {
    match c {
        FiltCommand::Tensor { x, y } => {
            Ok(module_out(&module_arg(&x)?.day_tensor(&module_arg(&y)?)))
        }
        FiltCommand::Gr { x } => {
            let gr = module_arg(&x)?.associated_graded()?;
            let mut text = String::from("weight\trank\n");
            for (w, r) in &gr {
                text.push_str(&format!("{w}\t{r}\n"));
            }
            let j: serde_json::Map<String, Value> =
                gr.iter().map(|(w, r)| (w.to_string(), json!(r))).collect();
            Ok(Output::new(text, Value::Object(j)))
        }
        FiltCommand::Rees { n, at } => {
            let rees = FilteredRing::int_z(n)?.rees()?;
            Ok(presentation_out(&rees, at))
        }
        FiltCommand::Drinfeld { n, at } => {
            let d = drinfeld_presentation(n)?;
            for (&(i, j), out) in d.products() {
                check_degree_bound(i, j, out)?;
            }
            if d != FilteredRing::int_z(n)?.rees()? {
                return Err(Error::Falsified(format!(
                    "Drinfeld constants through weight {n} differ from the Rees algebra"
                )));
            }
            Ok(presentation_out(&d, at))
        }
    }
}

fn table_out(rows: &[HomologyRow]) -> Output {
    let mut text = String::from("degree\tweight\tfree_rank\ttorsion\n");
    let mut j = Vec::new();
    for r in rows {
        let tors: Vec<String> = r.torsion.iter().map(ToString::to_string).collect();
        let t = if tors.is_empty() {
            "-".to_string()
        } else {
            tors.join(",")
        };
        text.push_str(&format!(
            "{}\t{}\t{}\t{t}\n",
            r.degree, r.weight, r.free_rank
        ));
        j.push(json!({"degree": r.degree, "weight": r.weight, "free_rank": r.free_rank, "torsion": tors}));
    }
    Output::new(text, Value::Array(j))
}

fn homology(g: &Global, c: HomologyCommand) -> Result<Output> {
    match c {
        HomologyCommand::Bar {
            algebra,
            stages,
            weight,
        } => {
            let w = weight.unwrap_or(stages);
            let s = payload(&algebra)?;
            let a = if is_json(&s) {
                GradedAugmentedAlgebra::from_json(&parse_json(&s)?)?
            } else {
                GradedAugmentedAlgebra::preset(&s, w)?
            };
            Ok(table_out(
                &bar_complex(&a, stages, w)?.homology_table(g.jobs),
            ))
        }
        HomologyCommand::Cobar {
            coalgebra,
            length,
            weight,
        } => {
            let w = weight.unwrap_or(length);
            let s = payload(&coalgebra)?;
            let c = if is_json(&s) {
                GradedCoalgebra::from_json(&parse_json(&s)?)?
            } else {
                GradedCoalgebra::preset(&s, w)?
            };
            Ok(table_out(
                &cobar_complex(&c, length, w)?.homology_table(g.jobs),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Falsified("d^2 != 0".into())), 3);
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::NotACycle), 2);
    }

    #[test]
    fn parser_is_consistent() {
        Cli::command().debug_assert();
    }
}
