mod dot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tailbite::charpair::{characteristic_pair, dual_span_list, enumerate_characteristic_matrices, msgm, span_matrix};
use tailbite::code::{CircularInterval, CodeFile, LinearCode};
use tailbite::{
    bcjr_dual, conjecture_search, edge_space_dual, elementary_trellis, kv_duality_check, kv_trellis,
    merge_product_to_bcjr, product_trellis, span_bcjr, Caps, CharacteristicPair, Error, ExplicitTrellis,
    FpMatrix, FpVector, IsoVerdict, MatrixTrellis, Mergeability, Minimality, OneToOne, PrimeField,
    SearchOptions, SpanList,
};

#[derive(Parser)]
#[command(name = "tailbite", version, about = "Tail-biting trellises of linear block codes over GF(p)")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect and transform code files.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Characteristic spans and matrices.
    #[command(subcommand)]
    Charpair(CharpairCmd),
    /// Build and check trellises.
    #[command(subcommand)]
    Trellis(TrellisCmd),
    /// Dual trellises of a BCJR trellis.
    #[command(subcommand)]
    Dualize(DualizeCmd),
    /// The KV duality conjecture.
    #[command(subcommand)]
    Conjecture(ConjectureCmd),
    /// Brute-force cross-checks on the expanded trellis.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum CodeCmd {
    Info { file: PathBuf },
    /// Re-emit the code file in canonical form.
    Emit { file: PathBuf },
    /// Emit the dual code (generated by H).
    Dual { file: PathBuf },
    /// Emit the code shifted left by `by` positions.
    Shift {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        by: usize,
    },
}

#[derive(Subcommand)]
enum CharpairCmd {
    /// Default characteristic pair (X, T) and its span matrix.
    Compute { file: PathBuf },
    /// Every characteristic matrix, rows up to scaling.
    Enumerate { file: PathBuf },
    Spanmatrix { file: PathBuf },
    /// Dual characteristic spans, compared with the reversed primal spans.
    Dualspans { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Product,
    Bcjr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    OneToOne,
    Reduced,
    Biproper,
    NonMergeable,
    Minimal,
}

#[derive(Args)]
struct Source {
    file: PathBuf,
    /// One span per generator row, e.g. "(0,2],(1,0]". Defaults to the
    /// minimal-span generator matrix and its linear spans.
    #[arg(long)]
    spans: Option<String>,
}

#[derive(Args)]
struct Built {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Construction::Bcjr)]
    construction: Construction,
}

#[derive(Args)]
struct KvSource {
    file: PathBuf,
    /// 1-based rows of the characteristic matrix, e.g. "1,3".
    #[arg(long)]
    rows: String,
    /// 1-based index of the characteristic matrix in enumeration order.
    #[arg(long, default_value_t = 1)]
    matrix: usize,
}

#[derive(Subcommand)]
enum TrellisCmd {
    /// Elementary trellis of one word on one span.
    Elementary {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        span: String,
        /// Allow spans whose endpoints carry zero entries.
        #[arg(long)]
        generalized: bool,
    },
    Product {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        check: Option<Property>,
    },
    Bcjr {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        check: Option<Property>,
    },
    Kv {
        #[command(flatten)]
        source: KvSource,
        #[arg(long, value_enum)]
        check: Option<Property>,
    },
    /// Merge the product trellis into the BCJR trellis by quotients.
    QuotientMerge {
        #[command(flatten)]
        source: Source,
    },
    Check {
        #[arg(value_enum)]
        property: Property,
        #[command(flatten)]
        built: Built,
    },
    /// Isomorphism between two constructions on the same code.
    Compare {
        #[command(flatten)]
        built: Built,
        #[arg(long)]
        other_spans: Option<String>,
        #[arg(long, value_enum, default_value_t = Construction::Product)]
        other_construction: Construction,
    },
    /// Shift the trellis and compare with the construction on the shifted code.
    Shift {
        #[command(flatten)]
        built: Built,
    },
    ExportDot {
        #[command(flatten)]
        built: Built,
        /// Export the BCJR dual instead.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand)]
enum DualizeCmd {
    Bcjr {
        #[command(flatten)]
        source: Source,
    },
    Edgespace {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Subcommand)]
enum ConjectureCmd {
    /// Check one primal selection against every dual characteristic matrix.
    Check {
        #[command(flatten)]
        source: KvSource,
    },
    /// Exhaustive search over all codes of small length.
    Search {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k_min: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        no_cyclic_dedup: bool,
        /// Resumable progress file.
        #[arg(long)]
        progress: Option<PathBuf>,
        /// Worker threads; defaults to available parallelism.
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Enumerate every cycle of the expanded trellis.
    Cycles {
        #[command(flatten)]
        built: Built,
    },
    /// Compare the brute-force label code with the code.
    Labelcode {
        #[command(flatten)]
        built: Built,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A finished command: text output, JSON report, and whether a property
/// violation was found.
struct Report {
    text: String,
    json: Value,
    violation: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, violation: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::from_env();
    match run(cli.cmd, &caps) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
                if !r.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(if r.violation { 1 } else { 0 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Cmd, caps: &Caps) -> Outcome<Report> {
    match cmd {
        Cmd::Code(c) => code_cmd(c, caps),
        Cmd::Charpair(c) => charpair_cmd(c, caps),
        Cmd::Trellis(c) => trellis_cmd(c, caps),
        Cmd::Dualize(c) => dualize_cmd(c),
        Cmd::Conjecture(c) => conjecture_cmd(c, caps),
        Cmd::Oracle(c) => oracle_cmd(c, caps),
    }
}

fn load(path: &Path) -> Outcome<LinearCode> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: CodeFile = text.parse()?;
    Ok(file.code()?)
}

fn rows(m: &FpMatrix) -> Vec<String> {
    m.row_vectors().iter().map(|r| r.digits()).collect()
}

fn block(m: &FpMatrix) -> String {
    if m.rows() == 0 {
        return "  (none)\n".into();
    }
    rows(m).iter().map(|r| format!("  {r}\n")).collect()
}

fn span_strings(s: &SpanList) -> Vec<String> {
    s.iter().map(|iv| iv.to_string()).collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Generator and spans: given spans apply to the file's G, otherwise the
/// minimal-span generator matrix supplies both.
fn resolve(source: &Source) -> Outcome<(LinearCode, FpMatrix, SpanList)> {
    let code = load(&source.file)?;
    match &source.spans {
        Some(text) => {
            let s = SpanList::parse(text, code.n())?;
            s.check_against(code.generator())?;
            Ok((code.clone(), code.generator().clone(), s))
        }
        None => {
            let (g, s) = msgm(code.generator())?;
            Ok((code, g, s))
        }
    }
}

fn construct(kind: Construction, g: &FpMatrix, s: &SpanList) -> Outcome<MatrixTrellis> {
    Ok(match kind {
        Construction::Product => product_trellis(g, s)?,
        Construction::Bcjr => span_bcjr(g, s)?.into_trellis(),
    })
}

fn build(b: &Built) -> Outcome<(LinearCode, FpMatrix, SpanList, MatrixTrellis)> {
    let (code, g, s) = resolve(&b.source)?;
    let t = construct(b.construction, &g, &s)?;
    Ok((code, g, s, t))
}

fn parse_rows(text: &str, k: usize) -> Outcome<Vec<usize>> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(r) if r >= 1 && r <= k => Ok(r - 1),
            _ => Err(Failure::Input(format!("bad row `{t}`: expected 1..{k}"))),
        })
        .collect()
}

fn kv_pair(code: &LinearCode, index: usize, caps: &Caps) -> Outcome<CharacteristicPair> {
    if index == 0 {
        return Err(Failure::Input("matrix indices start at 1".into()));
    }
    if index == 1 {
        return Ok(characteristic_pair(code, caps)?);
    }
    let all = enumerate_characteristic_matrices(code, caps)?;
    let count = all.pairs.len();
    all.pairs
        .into_iter()
        .nth(index - 1)
        .ok_or_else(|| Failure::Input(format!("matrix {index} out of range: {count} enumerated")))
}

fn kv_build(src: &KvSource, caps: &Caps) -> Outcome<(LinearCode, CharacteristicPair, Vec<usize>, MatrixTrellis)> {
    let code = load(&src.file)?;
    let pair = kv_pair(&code, src.matrix, caps)?;
    let sel = parse_rows(&src.rows, pair.n())?;
    let t = kv_trellis(&pair, &sel)?;
    Ok((code, pair, sel, t))
}

fn profile_text(t: &MatrixTrellis) -> String {
    let p = t.profile();
    format!("scp {}\necp {}\n", join(&p.scp), join(&p.ecp))
}

fn profile_json(t: &MatrixTrellis) -> Value {
    let p = t.profile();
    json!({ "scp": p.scp, "ecp": p.ecp })
}

fn iso_json(v: &IsoVerdict) -> Value {
    match v {
        IsoVerdict::Yes(_) => json!("yes"),
        IsoVerdict::No(_) => json!("no"),
        IsoVerdict::Unknown { .. } => json!("unknown"),
    }
}

fn iso_text(v: &IsoVerdict) -> String {
    match v {
        IsoVerdict::Yes(_) => "yes".into(),
        IsoVerdict::No(why) => format!("no ({why})"),
        IsoVerdict::Unknown { scanned } => format!("unknown (scan cap hit after {scanned})"),
    }
}

fn require_decided(v: &IsoVerdict) -> Outcome<()> {
    match v {
        IsoVerdict::Unknown { scanned } => Err(Failure::Cap(format!(
            "isomorphism search gave up after {scanned} candidates"
        ))),
        _ => Ok(()),
    }
}

fn code_cmd(cmd: CodeCmd, caps: &Caps) -> Outcome<Report> {
    match cmd {
        CodeCmd::Info { file } => {
            let code = load(&file)?;
            let words = code.codewords(caps)?;
            let words: Vec<String> = words.iter().map(|w| w.digits()).collect();
            let mut text = format!(
                "q={}\nn={}\nk={}\nG:\n{}H:\n{}full_support={}\ndual_full_support={}\ncodewords ({}):\n",
                code.field().p(),
                code.n(),
                code.k(),
                block(code.generator()),
                block(code.parity_check()),
                code.has_full_support(),
                code.dual().has_full_support(),
                words.len()
            );
            for w in &words {
                text.push_str(&format!("  {w}\n"));
            }
            let json = json!({
                "q": code.field().p(),
                "n": code.n(),
                "k": code.k(),
                "generator": rows(code.generator()),
                "parity_check": rows(code.parity_check()),
                "full_support": code.has_full_support(),
                "dual_full_support": code.dual().has_full_support(),
                "codewords": words,
            });
            Ok(Report::ok(text, json))
        }
        CodeCmd::Emit { file } => emit(&load(&file)?),
        CodeCmd::Dual { file } => emit(&load(&file)?.dual()),
        CodeCmd::Shift { file, by } => emit(&load(&file)?.shift(by)),
    }
}

fn emit(code: &LinearCode) -> Outcome<Report> {
    let text = CodeFile::from_code(code).emit();
    let json = json!({
        "q": code.field().p(),
        "n": code.n(),
        "k": code.k(),
        "generator": rows(code.generator()),
    });
    Ok(Report::ok(text, json))
}

fn charpair_cmd(cmd: CharpairCmd, caps: &Caps) -> Outcome<Report> {
    match cmd {
        CharpairCmd::Compute { file } => {
            let code = load(&file)?;
            let pair = characteristic_pair(&code, caps)?;
            let s = pair.span_matrix();
            let text = format!(
                "X:\n{}T: {}\nS:\n{}\n",
                block(pair.matrix()),
                pair.spans(),
                s
            );
            let json = json!({
                "matrix": rows(pair.matrix()),
                "spans": span_strings(pair.spans()),
                "span_matrix": s.rows(),
                "msgm_fallback": pair.used_msgm_fallback(),
            });
            Ok(Report::ok(text, json))
        }
        CharpairCmd::Enumerate { file } => {
            let code = load(&file)?;
            let all = enumerate_characteristic_matrices(&code, caps)?;
            let mut text = format!(
                "spans: {}\nmatrices: {} of {}{}\n",
                all.pairs[0].spans(),
                all.pairs.len(),
                all.total,
                if all.truncated { " (truncated)" } else { "" }
            );
            for (i, p) in all.pairs.iter().enumerate() {
                text.push_str(&format!("[{}] {}\n", i + 1, rows(p.matrix()).join(" ")));
            }
            let json = json!({
                "spans": span_strings(all.pairs[0].spans()),
                "total": all.total,
                "truncated": all.truncated,
                "matrices": all.pairs.iter().map(|p| rows(p.matrix())).collect::<Vec<_>>(),
            });
            Ok(Report::ok(text, json))
        }
        CharpairCmd::Spanmatrix { file } => {
            let code = load(&file)?;
            let pair = characteristic_pair(&code, caps)?;
            let s = span_matrix(pair.spans());
            let sums = s.column_sums();
            let text = format!("{s}\ncolumn sums {}\n", join(&sums));
            let json = json!({
                "span_matrix": s.rows(),
                "column_sums": sums,
                "characteristic": s.is_characteristic_for(code.k()),
            });
            Ok(Report::ok(text, json))
        }
        CharpairCmd::Dualspans { file } => {
            let code = load(&file)?;
            let primal = characteristic_pair(&code, caps)?;
            let predicted = dual_span_list(primal.spans());
            let actual = characteristic_pair(&code.dual(), caps)?;
            let matches = predicted.same_up_to_order(actual.spans());
            let text = format!(
                "primal: {}\nreversed: {}\ndual: {}\nmatches={}\n",
                primal.spans(),
                predicted,
                actual.spans(),
                matches
            );
            let json = json!({
                "primal_spans": span_strings(primal.spans()),
                "reversed_spans": span_strings(&predicted),
                "dual_spans": span_strings(actual.spans()),
                "matches": matches,
            });
            Ok(Report { violation: !matches, ..Report::ok(text, json) })
        }
    }
}

fn vertex_text(t: &MatrixTrellis) -> String {
    (0..t.n())
        .map(|i| format!("A_{i}:\n{}", block(t.vertex_matrix(i))))
        .collect()
}

fn trellis_report(title: &str, t: &MatrixTrellis, extra: String, mut json: Value) -> Report {
    let text = format!("{title}\n{}{}{}", profile_text(t), vertex_text(t), extra);
    json["profile"] = profile_json(t);
    json["vertex_matrices"] = json!((0..t.n()).map(|i| rows(t.vertex_matrix(i))).collect::<Vec<_>>());
    json["labels"] = json!(rows(t.label_matrix()));
    Report::ok(text, json)
}

/// Appends a property check to a construction report.
fn with_check(mut r: Report, check: Option<Property>, t: &MatrixTrellis, code: &LinearCode, caps: &Caps) -> Outcome<Report> {
    if let Some(p) = check {
        let c = check_property(p, t, code, caps)?;
        r.text.push_str(&c.text);
        r.json["check"] = c.json;
        r.violation = c.violation;
    }
    Ok(r)
}

fn property_name(p: Property) -> &'static str {
    match p {
        Property::OneToOne => "one-to-one",
        Property::Reduced => "reduced",
        Property::Biproper => "biproper",
        Property::NonMergeable => "non-mergeable",
        Property::Minimal => "minimal",
    }
}

fn cycle_line(vertices: &[FpVector], labels: &FpVector) -> String {
    let vs: Vec<String> = vertices.iter().map(|v| format!("[{}]", v.digits())).collect();
    format!("vertices {} labels {}", vs.join(" "), labels.digits())
}

/// First vertex with two equally labelled out- or in-edges.
fn biproper_witness(x: &ExplicitTrellis) -> Option<String> {
    for i in 0..x.n() {
        let es = x.edges(i);
        for (a, e) in es.iter().enumerate() {
            for f in &es[a + 1..] {
                if e.label != f.label {
                    continue;
                }
                if e.from == f.from {
                    let v = &x.vertices(i)[e.from];
                    return Some(format!("time {i}: vertex [{}] has two out-edges labelled {}", v.digits(), e.label));
                }
                if e.to == f.to {
                    let v = &x.vertices((i + 1) % x.n())[e.to];
                    return Some(format!("time {}: vertex [{}] has two in-edges labelled {}", (i + 1) % x.n(), v.digits(), e.label));
                }
            }
        }
    }
    None
}

fn check_property(p: Property, t: &MatrixTrellis, code: &LinearCode, caps: &Caps) -> Outcome<Report> {
    let name = property_name(p);
    let (holds, witness): (bool, Value) = match p {
        Property::OneToOne => match t.is_one_to_one() {
            OneToOne::Yes => (true, Value::Null),
            OneToOne::No { first, second } => (
                false,
                json!([cycle_line(&first.vertices, &first.labels), cycle_line(&second.vertices, &second.labels)]),
            ),
        },
        Property::Reduced => {
            let l = t.to_linear();
            if l.is_reduced() {
                (true, Value::Null)
            } else {
                let pruned = l.prune().profile();
                (false, json!(format!("pruned scp {}", join(&pruned.scp))))
            }
        }
        Property::Biproper => {
            if t.is_biproper() {
                (true, Value::Null)
            } else {
                let w = biproper_witness(&t.expand(caps)?)
                    .unwrap_or_else(|| "edge spaces fail the rank test".into());
                (false, json!(w))
            }
        }
        Property::NonMergeable => match t.mergeability(caps)? {
            Mergeability::NonMergeable => (true, Value::Null),
            Mergeability::Mergeable { time, vertex } => (
                false,
                json!(format!("time {time}: quotient by [{}] keeps the code", vertex.digits())),
            ),
        },
        Property::Minimal => match t.is_minimal(code, caps)? {
            Minimality::Minimal => (true, Value::Null),
            Minimality::Dominated { profile, pair, selection } => {
                let sel: Vec<String> = selection.iter().map(|s| (s + 1).to_string()).collect();
                (
                    false,
                    json!(format!(
                        "KV-trellis of matrix {} rows {} has scp {}",
                        pair + 1,
                        sel.join(","),
                        join(&profile)
                    )),
                )
            }
            Minimality::Unknown => {
                return Err(Failure::Cap("characteristic matrix enumeration truncated".into()))
            }
        },
    };
    let mut text = format!("{name}: {}\n", if holds { "yes" } else { "no" });
    match &witness {
        Value::Array(lines) => {
            for l in lines {
                text.push_str(&format!("  witness: {}\n", l.as_str().unwrap_or_default()));
            }
        }
        Value::String(s) => text.push_str(&format!("  witness: {s}\n")),
        _ => {}
    }
    let json = json!({ "property": name, "holds": holds, "witness": witness });
    Ok(Report { text, json, violation: !holds })
}

fn trellis_cmd(cmd: TrellisCmd, caps: &Caps) -> Outcome<Report> {
    match cmd {
        TrellisCmd::Elementary { q, word, span, generalized } => {
            let field = PrimeField::new(q)?;
            let c = FpVector::parse(field, &word)?;
            let iv = CircularInterval::parse(&span, c.len())?;
            let t = elementary_trellis(&c, &iv, generalized)?;
            let json = json!({ "word": c.digits(), "span": iv.to_string() });
            Ok(trellis_report(&format!("elementary trellis of {c} on {iv}"), &t, String::new(), json))
        }
        TrellisCmd::Product { source, check } => {
            let (code, g, s) = resolve(&source)?;
            let t = product_trellis(&g, &s)?;
            let json = json!({ "construction": "product", "generator": rows(&g), "spans": span_strings(&s) });
            let r = trellis_report(&format!("product trellis on {s}"), &t, String::new(), json);
            with_check(r, check, &t, &code, caps)
        }
        TrellisCmd::Bcjr { source, check } => {
            let (code, g, s) = resolve(&source)?;
            let b = span_bcjr(&g, &s)?;
            let extra = format!("H:\n{}D:\n{}", block(b.parity_check()), block(b.displacement()));
            let json = json!({
                "construction": "bcjr",
                "generator": rows(&g),
                "spans": span_strings(&s),
                "parity_check": rows(b.parity_check()),
                "displacement": rows(b.displacement()),
                "rank_deficient": b.rank_deficient(),
            });
            let r = trellis_report(&format!("BCJR trellis on {s}"), b.trellis(), extra, json);
            with_check(r, check, b.trellis(), &code, caps)
        }
        TrellisCmd::Kv { source, check } => {
            let (code, pair, sel, t) = kv_build(&source, caps)?;
            let chosen = pair.spans().select(&sel);
            let json = json!({
                "construction": "kv",
                "matrix": rows(pair.matrix()),
                "rows": sel.iter().map(|r| r + 1).collect::<Vec<_>>(),
                "spans": span_strings(&chosen),
            });
            let r = trellis_report(&format!("KV-trellis on {chosen}"), &t, String::new(), json);
            with_check(r, check, &t, &code, caps)
        }
        TrellisCmd::QuotientMerge { source } => {
            let (_, g, s) = resolve(&source)?;
            let m = merge_product_to_bcjr(&g, &s, caps)?;
            require_decided(&m.isomorphic)?;
            let text = format!(
                "product {}quotient {}bcjr {}coefficient_map_ok={}\nisomorphic={}\n",
                profile_text(&m.product),
                profile_text(&m.quotient),
                profile_text(m.bcjr.trellis()),
                m.coefficient_map_ok,
                iso_text(&m.isomorphic)
            );
            let json = json!({
                "spans": span_strings(&s),
                "product": profile_json(&m.product),
                "quotient": profile_json(&m.quotient),
                "bcjr": profile_json(m.bcjr.trellis()),
                "merge_subspaces": m.w.iter().map(rows).collect::<Vec<_>>(),
                "coefficient_map_ok": m.coefficient_map_ok,
                "isomorphic": iso_json(&m.isomorphic),
            });
            let ok = m.coefficient_map_ok && m.isomorphic.is_yes();
            Ok(Report { violation: !ok, ..Report::ok(text, json) })
        }
        TrellisCmd::Check { property, built } => {
            let (code, _, _, t) = build(&built)?;
            check_property(property, &t, &code, caps)
        }
        TrellisCmd::Compare { built, other_spans, other_construction } => {
            let (code, g, s, t) = build(&built)?;
            let s2 = match other_spans {
                Some(text) => SpanList::parse(&text, code.n())?,
                None => s.clone(),
            };
            s2.check_against(&g)?;
            let u = construct(other_construction, &g, &s2)?;
            let v = t.isomorphic(&u, caps);
            require_decided(&v)?;
            let text = format!(
                "first {}second {}isomorphic={}\n",
                profile_text(&t),
                profile_text(&u),
                iso_text(&v)
            );
            let json = json!({
                "first": profile_json(&t),
                "second": profile_json(&u),
                "isomorphic": iso_json(&v),
            });
            Ok(Report::ok(text, json))
        }
        TrellisCmd::Shift { built } => {
            let (_, g, s, t) = build(&built)?;
            let shifted = t.shift();
            let direct = construct(built.construction, &tailbite::code::shift_rows(&g, 1), &s.shift_left(1))?;
            let v = shifted.isomorphic(&direct, caps);
            require_decided(&v)?;
            let text = format!(
                "shifted {}direct {}isomorphic={}\n",
                profile_text(&shifted),
                profile_text(&direct),
                iso_text(&v)
            );
            let json = json!({
                "shifted": profile_json(&shifted),
                "direct": profile_json(&direct),
                "isomorphic": iso_json(&v),
            });
            Ok(Report { violation: v.is_no(), ..Report::ok(text, json) })
        }
        TrellisCmd::ExportDot { built, dual } => {
            let (_, g, s, t) = build(&built)?;
            let t = if dual {
                bcjr_dual(&span_bcjr(&g, &s)?)?.into_trellis()
            } else {
                t
            };
            let x = t.expand(caps)?;
            let text = dot::export_dot(&x);
            let json = json!({ "dot": text, "components": x.components(), "vertices": x.vertex_counts() });
            Ok(Report::ok(text, json))
        }
    }
}

fn dualize_cmd(cmd: DualizeCmd) -> Outcome<Report> {
    match cmd {
        DualizeCmd::Bcjr { source } => {
            let (_, g, s) = resolve(&source)?;
            let b = span_bcjr(&g, &s)?;
            let d = bcjr_dual(&b)?;
            let same = b.trellis().scp() == d.trellis().scp();
            let text = format!(
                "primal {}dual {}D':\n{}scp_equal={}\n",
                profile_text(b.trellis()),
                profile_text(d.trellis()),
                block(d.displacement()),
                same
            );
            let json = json!({
                "primal": profile_json(b.trellis()),
                "dual": profile_json(d.trellis()),
                "dual_displacement": rows(d.displacement()),
                "scp_equal": same,
            });
            Ok(Report { violation: !same, ..Report::ok(text, json) })
        }
        DualizeCmd::Edgespace { source } => {
            let (_, g, s) = resolve(&source)?;
            let b = span_bcjr(&g, &s)?;
            let e = edge_space_dual(&b)?;
            let p = e.profile();
            let contains = e.contains_bcjr_dual.iter().all(|&b| b);
            let text = format!(
                "primal {}edge-space dual\nscp {}\necp {}\nreduced={}\ncontains_bcjr_dual={}\n",
                profile_text(b.trellis()),
                join(&p.scp),
                join(&p.ecp),
                e.reduced,
                contains
            );
            let json = json!({
                "primal": profile_json(b.trellis()),
                "dual": { "scp": p.scp, "ecp": p.ecp },
                "reduced": e.reduced,
                "contains_bcjr_dual": contains,
            });
            Ok(Report { violation: !contains, ..Report::ok(text, json) })
        }
    }
}

fn conjecture_cmd(cmd: ConjectureCmd, caps: &Caps) -> Outcome<Report> {
    match cmd {
        ConjectureCmd::Check { source } => {
            let (code, pair, sel, _) = kv_build(&source, caps)?;
            let r = kv_duality_check(&code, &pair, &sel, caps)?;
            let mut text = format!(
                "primal scp {}\ncomplementary spans {}\nbcjr dual scp {}\n",
                join(&r.primal_scp),
                r.complementary,
                join(&r.bcjr_dual_profile.scp)
            );
            let mut verdicts = Vec::new();
            for v in &r.verdicts {
                let rows1: Vec<usize> = v.rows.iter().map(|x| x + 1).collect();
                let iso = v.isomorphic_to_bcjr_dual.as_ref();
                text.push_str(&format!(
                    "dual matrix {} rows {}: independent={} scp_matches={} isomorphic={}\n",
                    v.matrix + 1,
                    join(&rows1),
                    v.independent,
                    v.scp_matches.map_or("-".into(), |b| b.to_string()),
                    iso.map_or("-".into(), iso_text)
                ));
                verdicts.push(json!({
                    "matrix": v.matrix + 1,
                    "rows": rows1,
                    "independent": v.independent,
                    "scp_matches": v.scp_matches,
                    "isomorphic": iso.map(iso_json),
                }));
            }
            text.push_str(&format!(
                "strong={} weak={} weak_isomorphic={}{}\n",
                r.strong(),
                r.weak(),
                r.weak_isomorphic(),
                if r.truncated { " (dual enumeration truncated)" } else { "" }
            ));
            let json = json!({
                "selection": sel.iter().map(|x| x + 1).collect::<Vec<_>>(),
                "primal_scp": r.primal_scp,
                "complementary_spans": span_strings(&r.complementary),
                "bcjr_dual_scp": r.bcjr_dual_profile.scp,
                "verdicts": verdicts,
                "strong": r.strong(),
                "weak": r.weak(),
                "weak_isomorphic": r.weak_isomorphic(),
                "truncated": r.truncated,
            });
            if !r.weak() && r.truncated {
                return Err(Failure::Cap("dual enumeration truncated before a verdict".into()));
            }
            Ok(Report { violation: !r.weak(), ..Report::ok(text, json) })
        }
        ConjectureCmd::Search { q, n_min, n_max, k_min, k_max, no_cyclic_dedup, progress, workers } => {
            let mut opts = SearchOptions::new(PrimeField::new(q)?, n_max);
            opts.n_min = n_min;
            opts.caps = *caps;
            opts.cyclic_dedup = !no_cyclic_dedup;
            opts.progress = progress;
            if k_min.is_some() || k_max.is_some() {
                opts.k_range = Some((k_min.unwrap_or(1), k_max.unwrap_or(n_max)));
            }
            let report = match workers {
                Some(w) => rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Failure::Input(e.to_string()))?
                    .install(|| conjecture_search(&opts))?,
                None => conjecture_search(&opts)?,
            };
            let text = report.to_lines().join("\n") + "\n";
            let json = json!({
                "codes": report.codes,
                "records": report.records.len(),
                "choice_dependent": report.choice_dependent().map(|r| r.to_string()).collect::<Vec<_>>(),
                "weak_failures": report.weak_failures().map(|r| r.to_string()).collect::<Vec<_>>(),
                "theorem_violations": report.theorem_violations().map(|r| r.to_string()).collect::<Vec<_>>(),
                "capped": report.capped,
                "resumed": report.resumed,
                "passes": report.passes(),
            });
            if report.passes() && report.partial() {
                eprint!("{text}");
                return Err(Failure::Cap(format!("{} codes skipped at the cap", report.capped)));
            }
            Ok(Report { violation: !report.passes(), ..Report::ok(text, json) })
        }
    }
}

fn oracle_cmd(cmd: OracleCmd, caps: &Caps) -> Outcome<Report> {
    match cmd {
        OracleCmd::Cycles { built } => {
            let (_, _, _, t) = build(&built)?;
            let x = t.expand(caps)?;
            let cycles = x.cycles(caps.cycles)?;
            let lines: Vec<String> = cycles
                .iter()
                .map(|c| {
                    let vs: Vec<FpVector> =
                        c.vertices.iter().enumerate().map(|(i, &v)| x.vertices(i)[v].clone()).collect();
                    cycle_line(&vs, &c.labels)
                })
                .collect();
            let text = format!("cycles: {}\n{}\n", lines.len(), lines.join("\n"));
            let json = json!({ "count": lines.len(), "cycles": lines });
            Ok(Report::ok(text, json))
        }
        OracleCmd::Labelcode { built } => {
            let (code, _, _, t) = build(&built)?;
            let x = t.expand(caps)?;
            let brute = x.edge_label_code(caps.cycles)?;
            let words = code.codewords(caps)?;
            let linear = t.label_code();
            let brute_ok = brute.len() == words.len() && brute.iter().all(|w| code.contains(w));
            let linear_ok = linear.same_row_space(code.generator());
            let text = format!(
                "label words: {}\ncodewords: {}\nbrute_force_matches={}\nlinear_matches={}\n",
                brute.len(),
                words.len(),
                brute_ok,
                linear_ok
            );
            let json = json!({
                "label_words": brute.iter().map(|w| w.digits()).collect::<Vec<_>>(),
                "codewords": words.len(),
                "brute_force_matches": brute_ok,
                "linear_matches": linear_ok,
            });
            Ok(Report { violation: !(brute_ok && linear_ok), ..Report::ok(text, json) })
        }
    }
}
