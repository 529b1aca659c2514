mod exact;
mod output;
mod svg;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use output::{Manifest, Sink};
use serde_json::json;
use sl3web::dirichlet::{decay_fit, extension_ratio, DEFAULT_CAP_MARGIN, DEFAULT_TRUNC_EXTRA};
use sl3web::exactmath::face_type_probability;
use sl3web::montecarlo::{census, census_exhaustive, compare_with, CensusConfig, CensusResult, Prediction};
use sl3web::rng::stream_rng;
use sl3web::sampler::PathSampler;
use sl3web::{build_mdiagram, path_to_tableau, to_web, Color};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sl3web", version = output::VERSION, about = "Uniform random reduced sl3 webs and their face statistics")]
struct Cli {
    /// Worker threads for sampling and census runs.
    #[arg(long, global = true, env = "SL3WEB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Tableau,
    Path,
    Mdiagram,
    Web,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ColorArg {
    #[value(name = "R", alias = "r", alias = "red")]
    R,
    #[value(name = "B", alias = "b", alias = "blue")]
    B,
}

impl From<ColorArg> for Color {
    fn from(c: ColorArg) -> Color {
        match c {
            ColorArg::R => Color::Red,
            ColorArg::B => Color::Blue,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw one uniform web and print it in the requested form.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Emit::Tableau)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact and numeric values: `Ginf x y`, `h a z`, `g z`, `facetype τ C`, `I m`.
    Exact {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        query: Vec<String>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
        /// Method for `g`: series or quadrature.
        #[arg(long, default_value = "series")]
        mode: String,
    },
    /// Face census of uniform webs.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 16)]
        depth_max: u32,
        #[arg(long, default_value_t = 6)]
        type_max_len: usize,
        /// Enumerate every web instead of sampling (automatic for n <= 4).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extension ratio on the truncated quadrant Q_d.
    Ratio {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        fa: u32,
        #[arg(long)]
        fb: u32,
        #[arg(long, value_enum)]
        color: ColorArg,
        /// Level cap; defaults to trunc + 100.
        #[arg(long)]
        cap: Option<u32>,
        /// Truncation of both sums; defaults to d + 200.
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extension ratios over several depths and their log-log slope, with
    /// crossing data F_a = F_b = d.
    Decay {
        #[arg(long, value_delimiter = ',', default_value = "3,4,6,8,12")]
        ds: Vec<u32>,
        #[arg(long, value_enum, default_value_t = ColorArg::B)]
        color: ColorArg,
        #[arg(long)]
        trunc_extra: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// z-scores of a census against predicted type densities; exits 1 when
    /// a cell is flagged.
    Compare {
        #[arg(long)]
        census: PathBuf,
        /// JSON list of predictions, or `theorem` for the product formula.
        #[arg(long, default_value = "theorem")]
        predictions: String,
        /// With `theorem`, the number of most frequent types to predict.
        #[arg(long, default_value_t = 5)]
        top: usize,
        #[arg(long, default_value_t = 3.0)]
        threshold: f64,
        #[arg(long, default_value_t = 25.0)]
        min_expected: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Sample { n, seed, emit, out } => {
            if n == 0 {
                bail!("n must be at least 1");
            }
            let path = PathSampler::new(n).sample(&mut stream_rng(seed, 0));
            let manifest = Manifest::new("sample", json!({ "n": n, "emit": format!("{emit:?}").to_lowercase() }), Some(seed));
            let sink = Sink::new(out);
            match emit {
                Emit::Svg => sink.text(&svg::render(&build_mdiagram(&path)), None)?,
                Emit::Tableau => sink.json(&manifest, &path_to_tableau(&path)?)?,
                Emit::Path => sink.json(&manifest, &json!({ "n": n, "digits": path.to_digits() }))?,
                Emit::Mdiagram => sink.json(&manifest, &build_mdiagram(&path))?,
                Emit::Web => sink.json(&manifest, &output::web_view(&to_web(&build_mdiagram(&path))))?,
            }
        }
        Command::Exact { query, format, mode } => {
            let answer = exact::answer(&query.join(" "), &mode)?;
            let body = match format {
                TextFormat::Text => answer.text,
                TextFormat::Json => serde_json::to_string_pretty(&answer.json)?,
            };
            Sink::new(None).text(&(body + "\n"), None)?;
        }
        Command::Census { n, samples, seed, eps, depth_max, type_max_len, exhaustive, format, out } => {
            let cfg = CensusConfig { n, samples, seed, epsilon: eps, depth_max, type_max_len };
            let exhaustive = exhaustive || n <= 4;
            let result = if exhaustive { census_exhaustive(&cfg)? } else { census(&cfg)? };
            let manifest = Manifest::new("census", serde_json::to_value(&result.config)?, Some(seed));
            let sink = Sink::new(out);
            match format {
                TableFormat::Json => sink.json(&manifest, &result)?,
                TableFormat::Csv => sink.text(&output::census_csv(&result)?, Some(&manifest))?,
            }
        }
        Command::Ratio { d, fa, fb, color, cap, trunc, out } => {
            let trunc = trunc.unwrap_or(d + DEFAULT_TRUNC_EXTRA);
            let cap = cap.unwrap_or(trunc + DEFAULT_CAP_MARGIN);
            let r = extension_ratio(d, fa, fb, color.into(), trunc, cap)?;
            let manifest = Manifest::new("ratio", json!({ "d": d, "fa": fa, "fb": fb, "color": Color::from(color), "trunc": trunc, "cap": cap }), None);
            Sink::new(out).json(&manifest, &r)?;
        }
        Command::Decay { ds, color, trunc_extra, out } => {
            let extra = trunc_extra.unwrap_or(DEFAULT_TRUNC_EXTRA);
            let mut points = Vec::new();
            for &d in &ds {
                points.push(extension_ratio(d, d, d, color.into(), d + extra, d + extra + DEFAULT_CAP_MARGIN)?);
            }
            let slope = decay_fit(&points.iter().map(|r| (r.d as f64, r.ratio)).collect::<Vec<_>>())?;
            let manifest = Manifest::new("decay", json!({ "ds": ds, "color": Color::from(color), "trunc_extra": extra }), None);
            Sink::new(out).json(&manifest, &json!({ "slope": slope, "points": points }))?;
        }
        Command::Compare { census, predictions, top, threshold, min_expected, out } => {
            let result: CensusResult = output::read_result(&census)?;
            let preds: Vec<Prediction> = if predictions == "theorem" {
                result
                    .types
                    .iter()
                    .take(top)
                    .map(|t| {
                        let p = face_type_probability(&t.face_type.tau, t.face_type.color)?;
                        Ok(Prediction { face_type: t.face_type.clone(), density: p.value })
                    })
                    .collect::<Result<_>>()?
            } else {
                output::read_result(&PathBuf::from(&predictions)).with_context(|| format!("reading predictions {predictions}"))?
            };
            let report = compare_with(&result, &preds, threshold, min_expected);
            let manifest = Manifest::new(
                "compare",
                json!({ "census": census, "predictions": predictions, "threshold": threshold, "min_expected": min_expected }),
                Some(result.config.seed),
            );
            Sink::new(out).json(&manifest, &report)?;
            if report.eligible_within < report.eligible {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
