use std::collections::BTreeMap;
use std::io::Write;

use bwtcat_core::families::{
    central_word, fibonacci, lyndon_rotation, reverse_fibonacci, standard_word, t_family_word,
    wk_word, DirectiveSequence,
};
use bwtcat_core::sensitivity::{
    edit_effect_with, scan_edits_with, AlphabetPolicy, EditOp, MeasureSummary, Parallelism,
};
use bwtcat_core::verify::{BlockColumn, Check, Summary, Verifier};
use bwtcat_core::{BwtMatrix, CaBuilder, Error, Run, END_MARKER_BYTE};
use serde::Serialize;
use serde_json::json;

use crate::args::{AlphabetArg, Cli, Command, Family, Format, Op, Table, WordSource};

pub enum Failure {
    Usage(String),
    Compute(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::InsufficientDirectives { .. }
            | Error::IndexOutOfRange { .. }
            | Error::ReservedSymbol(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Out<'a> = &'a mut Vec<u8>;

fn builder() -> CaBuilder {
    match std::env::var("BWTCAT_ORACLE") {
        Ok(v) if v == "1" => CaBuilder::Naive,
        _ => CaBuilder::PrefixDoubling,
    }
}

pub fn run(cli: Cli, out: Out) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Transform {
            source,
            trim,
            dollar,
        } => transform(out, format, read_word(&source, trim)?, dollar),
        Command::Generate {
            family,
            params,
            stats,
            directive,
        } => generate(out, format, family, &params, stats, directive),
        Command::Edit {
            source,
            op,
            pos,
            sym,
        } => edit(out, format, read_word(&source, false)?, op, pos, sym),
        Command::Scan {
            source,
            alphabet,
            dollar,
            parallel,
        } => scan(
            out,
            format,
            read_word(&source, false)?,
            alphabet,
            dollar,
            parallel,
        ),
        Command::Verify { check, k, i } => verify(out, format, check, &k, i),
        Command::Report {
            table: Table::Table2,
            k,
        } => report(out, format, k),
    }
}

fn read_word(source: &WordSource, trim: bool) -> Result<Vec<u8>, Failure> {
    match (&source.word, &source.input) {
        (Some(w), None) => Ok(w.as_bytes().to_vec()),
        (None, Some(path)) => {
            let mut bytes = std::fs::read(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            if trim && bytes.last() == Some(&b'\n') {
                bytes.pop();
                if bytes.last() == Some(&b'\r') {
                    bytes.pop();
                }
            }
            Ok(bytes)
        }
        _ => Err(Failure::Usage("give exactly one of WORD or --input".into())),
    }
}

fn latin1(bytes: &[u8]) -> String {
    bytes.iter().map(|&b| b as char).collect()
}

fn json_line(out: Out, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Compute(e.to_string()))?;
    out.push(b'\n');
    Ok(())
}

fn rle_text(runs: &[Run]) -> Vec<u8> {
    let mut s = Vec::new();
    for (i, run) in runs.iter().enumerate() {
        if i > 0 {
            s.push(b',');
        }
        s.push(run.symbol.display_byte());
        s.extend_from_slice(format!(":{}", run.len).as_bytes());
    }
    s
}

fn transform(out: Out, format: Format, w: Vec<u8>, dollar: bool) -> Result<(), Failure> {
    let matrix = if dollar {
        if let Some(i) = w.iter().position(|&b| b == END_MARKER_BYTE) {
            return Err(Failure::Usage(format!(
                "byte 0x24 at offset {i} is reserved with --dollar"
            )));
        }
        BwtMatrix::with_end_marker_using(&w, builder())
    } else {
        BwtMatrix::rotations_with(&w, builder())?
    };
    let t = matrix.transform();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct TransformJson<'a> {
                bwt: String,
                runs: u64,
                rle: &'a [Run],
            }
            json_line(
                out,
                &TransformJson {
                    bwt: t.to_string_lossless(),
                    runs: t.run_count(),
                    rle: t.rle(),
                },
            )
        }
        Format::Text => {
            out.extend_from_slice(b"bwt=");
            out.extend_from_slice(&t.to_bytes());
            writeln!(out, " runs={}", t.run_count())?;
            out.extend_from_slice(b"rle=");
            out.extend_from_slice(&rle_text(t.rle()));
            out.push(b'\n');
            Ok(())
        }
        Format::Tsv => {
            out.extend_from_slice(b"bwt\truns\trle\n");
            out.extend_from_slice(&t.to_bytes());
            write!(out, "\t{}\t", t.run_count())?;
            out.extend_from_slice(&rle_text(t.rle()));
            out.push(b'\n');
            Ok(())
        }
    }
}

fn family_word(
    family: Family,
    params: &[usize],
    directive: Option<Vec<u64>>,
) -> Result<Vec<u8>, Failure> {
    let want = if family == Family::Tfam { 2 } else { 1 };
    if params.len() != want {
        return Err(Failure::Usage(format!(
            "{family:?} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    if directive.is_some() && family != Family::Standard {
        return Err(Failure::Usage(
            "--directive applies to the standard family only".into(),
        ));
    }
    let p = params[0];
    Ok(match family {
        Family::Fibonacci => fibonacci(p),
        Family::Revfib => reverse_fibonacci(p),
        Family::Standard => {
            let d = match directive {
                Some(d) => DirectiveSequence::new(d)?,
                None => DirectiveSequence::ones(p.saturating_sub(1)),
            };
            standard_word(&d, p)?
        }
        Family::Central => central_word(p)?,
        Family::Wk => wk_word(p)?,
        Family::Tfam => {
            let e = u32::try_from(params[1])
                .map_err(|_| Failure::Usage("exponent too large".into()))?;
            t_family_word(p, e)?
        }
        Family::Lyndonrot => {
            if p < 2 {
                return Err(Failure::Usage("lyndonrot needs an order >= 2".into()));
            }
            lyndon_rotation(&fibonacci(p))?
        }
    })
}

fn generate(
    out: Out,
    format: Format,
    family: Family,
    params: &[usize],
    stats: bool,
    directive: Option<Vec<u64>>,
) -> Result<(), Failure> {
    let w = family_word(family, params, directive)?;
    let (r, r_dollar) = if stats {
        let r = BwtMatrix::rotations_with(&w, builder())
            .ok()
            .map(|m| m.run_count());
        (
            r,
            Some(BwtMatrix::with_end_marker_using(&w, builder()).run_count()),
        )
    } else {
        (None, None)
    };
    match format {
        Format::Json => {
            let mut v = json!({ "word": latin1(&w), "length": w.len() });
            if stats {
                v["r"] = json!(r);
                v["r_dollar"] = json!(r_dollar);
            }
            json_line(out, &v)
        }
        Format::Text => {
            out.extend_from_slice(&w);
            out.push(b'\n');
            if stats {
                let r = r.map_or_else(|| "undefined".to_string(), |r| r.to_string());
                writeln!(
                    out,
                    "length={} r={r} r_dollar={}",
                    w.len(),
                    r_dollar.unwrap_or_default()
                )?;
            }
            Ok(())
        }
        Format::Tsv => {
            out.extend_from_slice(if stats {
                b"word\tlength\tr\tr_dollar\n"
            } else {
                b"word\n"
            });
            out.extend_from_slice(&w);
            if stats {
                let r = r.map_or_else(String::new, |r| r.to_string());
                write!(out, "\t{}\t{r}\t{}", w.len(), r_dollar.unwrap_or_default())?;
            }
            out.push(b'\n');
            Ok(())
        }
    }
}

fn single_byte(sym: Option<String>) -> Result<u8, Failure> {
    match sym.as_deref().map(str::as_bytes) {
        Some([b]) => Ok(*b),
        Some(_) => Err(Failure::Usage("--char must be exactly one byte".into())),
        None => Err(Failure::Usage(
            "--char is required for insert and substitute".into(),
        )),
    }
}

fn show(v: Option<u64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

fn edit(
    out: Out,
    format: Format,
    w: Vec<u8>,
    op: Op,
    pos: usize,
    sym: Option<String>,
) -> Result<(), Failure> {
    let op = match op {
        Op::Insert => EditOp::Insert {
            pos,
            sym: single_byte(sym)?,
        },
        Op::Substitute => EditOp::Substitute {
            pos,
            sym: single_byte(sym)?,
        },
        Op::Delete if sym.is_some() => {
            return Err(Failure::Usage("--char does not apply to delete".into()))
        }
        Op::Delete => EditOp::Delete { pos },
    };
    let edited = bwtcat_core::sensitivity::apply_edit(&w, op)?;
    let effect = edit_effect_with(&w, op, builder())?;
    match format {
        Format::Json => json_line(
            out,
            &json!({ "op": op, "word": latin1(&edited), "effect": effect }),
        ),
        Format::Text => {
            out.extend_from_slice(&edited);
            out.push(b'\n');
            writeln!(
                out,
                "r: {} -> {}",
                show(effect.r_before),
                show(effect.r_after)
            )?;
            writeln!(
                out,
                "r_dollar: {} -> {}",
                effect.r_dollar_before, effect.r_dollar_after
            )?;
            Ok(())
        }
        Format::Tsv => {
            out.extend_from_slice(b"word\tr_before\tr_after\tr_dollar_before\tr_dollar_after\n");
            out.extend_from_slice(&edited);
            let cell = |v: Option<u64>| v.map_or_else(String::new, |x| x.to_string());
            writeln!(
                out,
                "\t{}\t{}\t{}\t{}",
                cell(effect.r_before),
                cell(effect.r_after),
                effect.r_dollar_before,
                effect.r_dollar_after
            )?;
            Ok(())
        }
    }
}

fn summary_lines(out: Out, name: &str, m: &MeasureSummary) -> Result<(), Failure> {
    let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
    writeln!(out, "{name} base={}", m.base)?;
    writeln!(
        out,
        "{name} max_additive={} by {}",
        opt(m.max_additive.map(|x| x.to_string())),
        opt(m.argmax_additive.map(|op| op.to_string()))
    )?;
    writeln!(
        out,
        "{name} max_multiplicative={} by {}",
        opt(m.max_multiplicative.map(|x| x.to_string())),
        opt(m.argmax_multiplicative.map(|op| op.to_string()))
    )?;
    Ok(())
}

fn scan(
    out: Out,
    format: Format,
    w: Vec<u8>,
    alphabet: AlphabetArg,
    dollar: bool,
    parallel: bool,
) -> Result<(), Failure> {
    let policy = match alphabet {
        AlphabetArg::WordAlphabet => AlphabetPolicy::WordAlphabet,
        AlphabetArg::WordAlphabetPlusFresh => AlphabetPolicy::WordAlphabetPlusFresh,
    };
    let mode = if parallel {
        Parallelism::Parallel
    } else {
        Parallelism::Serial
    };
    let report = scan_edits_with(&w, policy, mode, builder())?;
    match format {
        Format::Json => json_line(out, &report),
        Format::Text => {
            writeln!(
                out,
                "edits={} effective={} symbols={}",
                report.records.len(),
                report.effective_edits(),
                latin1(&report.symbols)
            )?;
            if dollar {
                summary_lines(out, "r_dollar", &report.r_dollar)
            } else {
                summary_lines(out, "r", &report.r)
            }
        }
        Format::Tsv => {
            out.extend_from_slice(b"kind\tpos\tsym\tno_op\tr\tr_dollar\n");
            for rec in &report.records {
                let sym = rec
                    .op
                    .sym()
                    .map_or_else(String::new, |b| (b as char).to_string());
                let r = rec.r.map_or_else(String::new, |x| x.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{sym}\t{}\t{r}\t{}",
                    rec.op.kind(),
                    rec.op.pos(),
                    rec.no_op,
                    rec.r_dollar
                )?;
            }
            Ok(())
        }
    }
}

fn parse_k(k: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("--k expects N or A..B, got {k:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match k.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let v = num(k)?;
            Ok((v, v))
        }
    }
}

fn verify(
    out: Out,
    format: Format,
    check: Option<String>,
    k: &str,
    i: Option<usize>,
) -> Result<(), Failure> {
    let verifier = Verifier::new(builder());
    let (lo, hi) = parse_k(k)?;
    let check = match check.as_deref() {
        None => None,
        Some(id) => Some(
            Check::from_id(id).ok_or_else(|| Failure::Usage(format!("unknown check {id:?}")))?,
        ),
    };
    let summary = match (check, i) {
        (Some(Check::TFamily), Some(i)) => {
            let mut reports = Vec::new();
            for e in lo..=hi {
                let e =
                    u32::try_from(e).map_err(|_| Failure::Usage("exponent too large".into()))?;
                reports.extend(verifier.verify_t_family(i, e)?);
            }
            Summary::from_reports(reports)
        }
        (_, Some(_)) => return Err(Failure::Usage("--i applies to --check tfam only".into())),
        // A single explicit k is checked even outside the sweep bounds.
        (Some(c), None) if lo == hi => Summary::from_reports(verifier.run(c, lo)?),
        (Some(c), None) => verifier.run_checks(&[c], lo..=hi)?,
        (None, None) => verifier.verify_all(lo..=hi)?,
    };
    match format {
        Format::Json => json_line(out, &summary)?,
        Format::Text => {
            for r in &summary.reports {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "passed={} failed={}", summary.passed, summary.failed)?;
        }
        Format::Tsv => {
            out.extend_from_slice(b"check\tparams\tclaim\texpected\tobserved\tpass\tdetail\n");
            for r in &summary.reports {
                let params: Vec<String> =
                    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.check_id,
                    params.join(","),
                    r.claim,
                    r.expected,
                    r.observed,
                    r.pass,
                    r.detail
                )?;
            }
        }
    }
    if summary.all_pass() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn report(out: Out, format: Format, k: usize) -> Result<(), Failure> {
    let rows = Verifier::new(builder()).table(k)?;
    if format == Format::Json {
        let rows: Vec<_> = rows
            .iter()
            .map(|row| {
                let blocks: BTreeMap<&str, &str> = row
                    .blocks
                    .iter()
                    .map(|(l, b)| (l.as_str(), b.as_str()))
                    .collect();
                json!({ "word": row.label, "length": row.length, "blocks": blocks, "r": row.runs })
            })
            .collect();
        return json_line(
            out,
            &json!({ "k": k, "columns": column_labels(k), "rows": rows }),
        );
    }
    // Text and TSV share the tab-separated layout; ε is an empty cell.
    write!(out, "word")?;
    for label in column_labels(k) {
        write!(out, "\t{label}")?;
    }
    writeln!(out, "\tr")?;
    for row in rows {
        write!(out, "{}", row.label)?;
        for (_, block) in &row.blocks {
            write!(out, "\t{block}")?;
        }
        writeln!(out, "\t{}", row.runs)?;
    }
    Ok(())
}

fn column_labels(k: usize) -> Vec<String> {
    BlockColumn::columns(k)
        .into_iter()
        .map(|c| c.label(k))
        .collect()
}
