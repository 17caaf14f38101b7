//! `gic`: rate regions, gap audits and figure data for the two-user
//! Gaussian interference channel.
//!
//! Every command prints one JSON object (or a CSV table with
//! `--format csv`) and exits with 0 on success, 1 on I/O or runtime
//! failure, 2 on invalid input and 3 when a certificate check fails.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gic_core::bounds::{outer_for_class, pt2pt_outer, symmetric_bounds, symmetric_capacity_strong};
use gic_core::channel::{self, classify, db_to_linear, symmetric_regime, ChannelParams};
use gic_core::gap::{self, ClassFilter};
use gic_core::gdof::{self, BaselineScheme, GdofParams};
use gic_core::hk::{self, PowerSplit};
use gic_core::numfmt::{fmt_sig, round_sig};
use gic_core::region::{self, RateRegion};

#[derive(Parser, Debug)]
#[command(name = "gic", version, about = "Two-user Gaussian interference channel calculator")]
struct Cli {
    /// Read SNR/INR values as dB instead of linear ratios.
    #[arg(long, global = true)]
    db: bool,

    /// Seed for sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file for tabular data (sweep rows, figures).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
struct ChannelArgs {
    #[arg(long, allow_negative_numbers = true)]
    snr1: f64,
    #[arg(long, allow_negative_numbers = true)]
    snr2: f64,
    #[arg(long, allow_negative_numbers = true)]
    inr1: f64,
    #[arg(long, allow_negative_numbers = true)]
    inr2: f64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BoundMode {
    /// Outer bound matching the channel class.
    Class,
    /// Interference-free box.
    Pt2pt,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FilterArg {
    Weak,
    Mixed,
    NonStrong,
}

impl From<FilterArg> for ClassFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Weak => ClassFilter::Weak,
            FilterArg::Mixed => ClassFilter::Mixed,
            FilterArg::NonStrong => ClassFilter::NonStrong,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Figure {
    GdofCurve,
    HkFraction,
    UbVsHk,
    DiffRates,
    GdofRegion,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Interference class, symmetric regime and B-set.
    Classify(ChannelArgs),
    /// Inner and outer regions with certificates.
    Region {
        #[command(flatten)]
        ch: ChannelArgs,
        /// Explicit private interference of user 1 at receiver 2 (linear).
        #[arg(long, requires = "inr_p1")]
        inr_p2: Option<f64>,
        /// Explicit private interference of user 2 at receiver 1 (linear).
        #[arg(long, requires = "inr_p2")]
        inr_p1: Option<f64>,
        #[arg(long, value_enum, default_value_t = BoundMode::Class)]
        bound: BoundMode,
    },
    /// Symmetric achievable rate and upper bounds.
    Symrate {
        #[arg(long, allow_negative_numbers = true)]
        snr: f64,
        #[arg(long, allow_negative_numbers = true)]
        inr: f64,
    },
    /// Constraint-family gap audit of one channel.
    GapAudit(ChannelArgs),
    /// Random sweep of the one-bit and within-half checks.
    Sweep {
        #[arg(long, short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long = "class", value_enum, default_value_t = FilterArg::NonStrong)]
        class: FilterArg,
        /// Per-user gap tested, in bits.
        #[arg(long, default_value_t = 1.0)]
        gap_bits: f64,
    },
    /// Generalized degrees of freedom.
    Gdof {
        /// Symmetric exponent; alternative to --alpha1/2/3.
        #[arg(long, conflicts_with_all = ["alpha1", "alpha2", "alpha3"])]
        alpha: Option<f64>,
        /// log SNR2 / log SNR1.
        #[arg(long, requires_all = ["alpha2", "alpha3"])]
        alpha1: Option<f64>,
        /// log INR1 / log SNR1.
        #[arg(long)]
        alpha2: Option<f64>,
        /// log INR2 / log SNR1.
        #[arg(long)]
        alpha3: Option<f64>,
        /// Also report finite-SNR rates at this SNR (symmetric only).
        #[arg(long)]
        snr: Option<f64>,
    },
    /// Figure data as CSV.
    Figures {
        #[arg(value_enum)]
        id: Figure,
        /// Exponent for gdof-region.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
    /// Differential rates at a power level.
    Diffrate {
        #[arg(long)]
        z: f64,
        #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
        snr1: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        inr2: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Usage(String),
    Certification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Certification(_) => 3,
        }
    }
}

impl From<gic_core::Error> for Failure {
    fn from(e: gic_core::Error) -> Self {
        use gic_core::Error as E;
        match e {
            E::Containment { .. } => Failure::Certification(e.to_string()),
            E::UnboundedRegion | E::EmptyRegion { .. } => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Rounds every float in a JSON tree to the shared precision.
fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            json!(round_sig(n.as_f64().expect("f64 number")))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

struct Ctx {
    db: bool,
    seed: u64,
    out: Option<PathBuf>,
    format: Format,
}

impl Ctx {
    fn ratio(&self, x: f64) -> f64 {
        if self.db {
            db_to_linear(x)
        } else {
            x
        }
    }

    fn channel(&self, a: &ChannelArgs) -> Res<ChannelParams> {
        Ok(ChannelParams::new(self.ratio(a.snr1), self.ratio(a.snr2), self.ratio(a.inr1), self.ratio(a.inr2))?)
    }

    /// Prints one object, as JSON or as a one-row CSV of its scalar fields.
    fn emit(&self, v: Value) -> Res<()> {
        let v = rounded(v);
        let mut stdout = io::stdout().lock();
        match self.format {
            Format::Json => writeln!(stdout, "{}", serde_json::to_string(&v).expect("valid json"))?,
            Format::Csv => {
                let obj = v.as_object().cloned().unwrap_or_default();
                let mut w = csv::Writer::from_writer(stdout);
                let scalars: Vec<(&String, &Value)> =
                    obj.iter().filter(|(_, v)| !v.is_object() && !v.is_array()).collect();
                w.write_record(scalars.iter().map(|(k, _)| k.as_str()))?;
                w.write_record(scalars.iter().map(|(_, v)| cell(v)))?;
                w.flush()?;
            }
        }
        Ok(())
    }

    /// Writes a table to `--out`, or to stdout when no path is given.
    fn table(&self, header: &[&str], rows: &[Vec<String>]) -> Res<()> {
        let sink: Box<dyn Write> = match &self.out {
            Some(p) => Box::new(File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?),
            None => Box::new(io::stdout().lock()),
        };
        if self.format == Format::Json && self.out.is_none() {
            let cols: Vec<Value> = header.iter().map(|h| json!(h)).collect();
            let data: Vec<Value> = rows
                .iter()
                .map(|r| r.iter().map(|c| c.parse::<f64>().map_or_else(|_| json!(c), |x| json!(x))).collect())
                .collect();
            return self.emit(json!({ "columns": cols, "rows": data }));
        }
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().map(fmt_sig).unwrap_or_else(|| n.to_string()),
        other => other.to_string(),
    }
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

fn classify_cmd(ctx: &Ctx, a: &ChannelArgs) -> Res<()> {
    let p = ctx.channel(a)?;
    let class = classify(&p);
    let mut o = Map::new();
    o.insert("class".into(), json!(class.tag.as_str()));
    if let Some(vs) = class.very_strong {
        o.insert("very_strong".into(), json!(vs));
    }
    if p.is_symmetric() {
        if let Ok(al) = channel::alpha(p.snr1, p.inr1) {
            o.insert("alpha".into(), json!(al));
        }
        if let Ok(reg) = symmetric_regime(p.snr1, p.inr1) {
            o.insert("regime".into(), json!(reg.regime));
            if let Some(b) = reg.bset {
                o.insert("bset".into(), json!(b.as_str()));
            }
        }
    }
    ctx.emit(Value::Object(o))
}

fn region_json(r: &RateRegion) -> Res<Value> {
    Ok(to_value(&r.to_json_view()?))
}

fn region_cmd(ctx: &Ctx, a: &ChannelArgs, split: Option<PowerSplit>, bound: BoundMode) -> Res<()> {
    let p = ctx.channel(a)?;
    let split = split.unwrap_or_else(|| hk::recommended_split(&p));
    let inner = hk::hk_region(&p, &split)?;
    let outer = match bound {
        BoundMode::Class => outer_for_class(&p)?,
        BoundMode::Pt2pt => pt2pt_outer(&p),
    };
    let one_bit = region::one_bit_certificate(&inner, &outer)?;
    let within_half = region::within_half_certificate(&inner, &outer)?;
    let unclamped = region::unclamped_gap_certificate(&inner, &outer, 1.0)?;
    let identical = region::same_vertex_set(&region::vertices(&inner)?, &region::vertices(&outer)?, region::TOL);
    if ctx.format == Format::Csv {
        let mut rows = Vec::new();
        for (name, r) in [("inner", &inner), ("outer", &outer)] {
            for v in region::vertices(r)? {
                rows.push(vec![name.to_string(), fmt_sig(v.r1), fmt_sig(v.r2)]);
            }
        }
        let ctx_stdout = Ctx { out: None, ..*ctx };
        return ctx_stdout.table(&["region", "r1", "r2"], &rows);
    }
    ctx.emit(json!({
        "class": classify(&p).tag.as_str(),
        "split": to_value(&split),
        "inner": region_json(&inner)?,
        "outer": region_json(&outer)?,
        "symmetric_rate_inner": region::symmetric_rate(&inner),
        "symmetric_rate_outer": region::symmetric_rate(&outer),
        "one_bit": one_bit,
        "one_bit_unclamped": unclamped,
        "within_half": within_half,
        "inner_equals_outer": identical,
    }))
}

fn symrate_cmd(ctx: &Ctx, snr: f64, inr: f64) -> Res<()> {
    let (snr, inr) = (ctx.ratio(snr), ctx.ratio(inr));
    ChannelParams::symmetric(snr, inr)?;
    let b = symmetric_bounds(snr, inr);
    let mut o = json!({
        "snr": snr,
        "inr": inr,
        "hk_rate": hk::symmetric_hk_rate(snr, inr),
        "genie_ub": b.genie_ub,
        "new_ub": b.new_ub,
        "kramer_ub": b.kramer_ub,
        "pt2pt_ub": b.pt2pt_ub,
        "best_ub": b.best,
    });
    let m = o.as_object_mut().expect("object literal");
    if let Ok(reg) = symmetric_regime(snr, inr) {
        m.insert("regime".into(), json!(reg.regime));
        m.insert("bset".into(), json!(reg.bset.map(|b| b.as_str())));
    }
    if let Ok(c) = symmetric_capacity_strong(snr, inr) {
        m.insert("capacity".into(), json!(c));
    }
    ctx.emit(o)
}

fn gap_audit_cmd(ctx: &Ctx, a: &ChannelArgs) -> Res<()> {
    let p = ctx.channel(a)?;
    let report = gap::delta_audit(&p)?;
    let (_, inner, outer) = gap::audit_regions(&p)?;
    let one_bit = region::one_bit_certificate(&inner, &outer)?;
    let within_half = region::within_half_certificate(&inner, &outer)?;
    let mut v = to_value(&report);
    let m = v.as_object_mut().expect("struct serializes to object");
    m.insert("one_bit_pass".into(), json!(one_bit));
    m.insert("within_half_pass".into(), json!(within_half));
    ctx.emit(v)?;
    if report.pass && one_bit && within_half {
        Ok(())
    } else {
        Err(Failure::Certification("gap audit failed".into()))
    }
}

const SWEEP_HEADER: [&str; 12] = [
    "snr1_db",
    "snr2_db",
    "inr1_db",
    "inr2_db",
    "class",
    "delta_r1",
    "delta_r2",
    "delta_sum",
    "delta_2r1_r2",
    "delta_r1_2r2",
    "one_bit_pass",
    "within_half_pass",
];

fn sweep_cmd(ctx: &Ctx, n: u64, filter: ClassFilter, gap_bits: f64) -> Res<()> {
    if !(gap_bits.is_finite() && gap_bits >= 0.0) {
        return Err(Failure::Usage(format!("--gap-bits must be >= 0, got {gap_bits}")));
    }
    let out = gap::sweep(n as usize, ctx.seed, filter, gap_bits)?;
    let rows: Vec<Vec<String>> = out
        .rows
        .iter()
        .map(|r| {
            let s = &r.sample;
            let mut row = vec![
                fmt_sig(s.snr1_db),
                fmt_sig(s.snr2_db),
                fmt_sig(s.inr1_db),
                fmt_sig(s.inr2_db),
                r.report.class.as_str().to_string(),
            ];
            row.extend(r.report.deltas().into_iter().map(opt_cell));
            // containment failures count against both certificates
            row.push((r.contained && r.report.pass && r.one_bit_pass).to_string());
            row.push((r.contained && r.within_half_pass).to_string());
            row
        })
        .collect();

    let summary = serde_json::to_string(&rounded(to_value(&out.summary()))).expect("valid json");
    Ctx { format: Format::Csv, out: ctx.out.clone(), ..*ctx }.table(&SWEEP_HEADER, &rows)?;
    // the summary goes to stderr when the rows occupy stdout
    if ctx.out.is_some() {
        writeln!(io::stdout().lock(), "{summary}")?;
    } else {
        writeln!(io::stderr().lock(), "{summary}")?;
    }
    let failures = out.failures().len();
    if failures > 0 {
        return Err(Failure::Certification(format!("{failures} of {n} instances failed")));
    }
    Ok(())
}

fn gdof_json(r: &RateRegion) -> Res<Value> {
    region_json(r)
}

fn gdof_cmd(ctx: &Ctx, alpha: Option<f64>, a123: (Option<f64>, Option<f64>, Option<f64>), snr: Option<f64>) -> Res<()> {
    match (alpha, a123) {
        (Some(a), _) => {
            let region = gdof::symmetric_gdof_region(a)?;
            let mut o = json!({
                "alpha": a,
                "d_sym": gdof::d_sym(a)?,
                "d_orth": gdof::baseline_gdof(a, BaselineScheme::Orthogonalize)?,
                "d_tin": gdof::baseline_gdof(a, BaselineScheme::TreatAsNoise)?,
                "region": gdof_json(&region)?,
            });
            if let Some(s) = snr {
                let c = gdof::finite_snr_convergence(ctx.ratio(s), a)?;
                o.as_object_mut().expect("object literal").insert("finite_snr".into(), to_value(&c));
            }
            ctx.emit(o)
        }
        (None, (Some(a1), Some(a2), Some(a3))) => {
            let g = GdofParams::new(a1, a2, a3)?;
            let tag = g.class();
            let region = match tag {
                channel::ClassTag::Weak => gdof::weak_gdof_region(&g)?,
                channel::ClassTag::Strong => gdof::strong_gdof_region(&g)?,
                _ => gdof::mixed_gdof_region(&g)?,
            };
            ctx.emit(json!({
                "alpha1": a1,
                "alpha2": a2,
                "alpha3": a3,
                "class": tag.as_str(),
                "region": gdof_json(&region)?,
            }))
        }
        _ => Err(Failure::Usage("give --alpha or all of --alpha1 --alpha2 --alpha3".into())),
    }
}

fn grid(lo: f64, hi: f64, step_hundredths: usize) -> Vec<f64> {
    let n = ((hi - lo) * 100.0).round() as usize / step_hundredths;
    (0..=n).map(|i| lo + (i * step_hundredths) as f64 / 100.0).collect()
}

fn figure_rows(id: Figure, alpha: f64) -> Res<(Vec<&'static str>, Vec<Vec<String>>)> {
    let f = fmt_sig;
    Ok(match id {
        Figure::GdofCurve => {
            let mut alphas = grid(0.0, 2.5, 1);
            // 2/3 is a breakpoint that the 0.01 grid misses
            let at = alphas.iter().position(|&a| a > 2.0 / 3.0).expect("grid passes 2/3");
            alphas.insert(at, 2.0 / 3.0);
            let rows = alphas
                .into_iter()
                .map(|a| {
                    Ok(vec![
                        f(a),
                        f(gdof::d_sym(a)?),
                        f(gdof::baseline_gdof(a, BaselineScheme::Orthogonalize)?),
                        f(gdof::baseline_gdof(a, BaselineScheme::TreatAsNoise)?),
                    ])
                })
                .collect::<Res<Vec<_>>>()?;
            (vec!["alpha", "d_sym", "d_orth", "d_tin"], rows)
        }
        Figure::HkFraction => {
            let rows =
                grid(0.0, 1.0, 1).into_iter().map(|a| vec![f(a), f((1.0 - a / 2.0).min(a.max(1.0 - a)))]).collect();
            (vec!["alpha", "hk_fraction"], rows)
        }
        Figure::UbVsHk => {
            let rows = grid(0.0, 1.0, 1)
                .into_iter()
                .map(|a| vec![f(a), f((1.0 - a / 2.0).min(a.max(1.0 - a))), f(1.0 - a / 2.0)])
                .collect();
            (vec!["alpha", "hk", "genie_ub"], rows)
        }
        Figure::DiffRates => {
            let (snr1, inr2) = (db_to_linear(20.0), db_to_linear(10.0));
            let rows = grid(0.0, 1.0, 1)
                .into_iter()
                .map(|z| {
                    let d = hk::differential_rates(z, snr1, inr2)?;
                    Ok(vec![f(z), f(d.r1), f(d.r2)])
                })
                .collect::<Res<Vec<_>>>()?;
            (vec!["z", "r1", "r2"], rows)
        }
        Figure::GdofRegion => {
            let r = gdof::symmetric_gdof_region(alpha)?;
            let rows = region::vertices(&r)?.into_iter().map(|v| vec![f(v.r1), f(v.r2)]).collect();
            (vec!["d1", "d2"], rows)
        }
    })
}

fn figures_cmd(ctx: &Ctx, id: Figure, alpha: f64) -> Res<()> {
    let (header, rows) = figure_rows(id, alpha)?;
    ctx.table(&header, &rows)
}

fn diffrate_cmd(ctx: &Ctx, z: f64, snr1: f64, inr2: f64) -> Res<()> {
    let d = hk::differential_rates(z, ctx.ratio(snr1), ctx.ratio(inr2))?;
    let ln2 = std::f64::consts::LN_2;
    ctx.emit(json!({
        "z": z,
        "r1": d.r1,
        "r2": d.r2,
        "r1_bits": d.r1 / ln2,
        "r2_bits": d.r2 / ln2,
    }))
}

fn run(cli: Cli) -> Res<()> {
    let ctx = Ctx { db: cli.db, seed: cli.seed, out: cli.out, format: cli.format };
    match cli.command {
        Command::Classify(a) => classify_cmd(&ctx, &a),
        Command::Region { ch, inr_p2, inr_p1, bound } => {
            let split = match (inr_p2, inr_p1) {
                (Some(p2), Some(p1)) => Some(PowerSplit::new(p2, p1)),
                _ => None,
            };
            region_cmd(&ctx, &ch, split, bound)
        }
        Command::Symrate { snr, inr } => symrate_cmd(&ctx, snr, inr),
        Command::GapAudit(a) => gap_audit_cmd(&ctx, &a),
        Command::Sweep { n, class, gap_bits } => sweep_cmd(&ctx, n, class.into(), gap_bits),
        Command::Gdof { alpha, alpha1, alpha2, alpha3, snr } => gdof_cmd(&ctx, alpha, (alpha1, alpha2, alpha3), snr),
        Command::Figures { id, alpha } => figures_cmd(&ctx, id, alpha),
        Command::Diffrate { z, snr1, inr2 } => diffrate_cmd(&ctx, z, snr1, inr2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Io(m) | Failure::Usage(m) | Failure::Certification(m) => m,
            };
            eprintln!("gic: {msg}");
            ExitCode::from(f.code())
        }
    }
}
