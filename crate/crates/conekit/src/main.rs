use clap::{Parser, Subcommand};
use conekit::cone::{dirichlet_domain, tile_check, Ambient, PolyCone};
use conekit::error::{Error, Result};
use conekit::fixtures::{self, Fixture};
use conekit::jsonio;
use conekit::mat::{self, Rat};
use conekit::sampling::Sampler;
use conekit::surface::{
    curve_types, iitaka_case, minus_one_classes, mordell_weil_action, zariski_decompose,
    IitakaCase, Verdict,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "conekit",
    version,
    about = "Exact cone computations on Lorentzian lattices and surfaces"
)]
struct Cli {
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on orbit and enumeration sizes.
    #[arg(long, global = true, default_value_t = 20000)]
    budget: usize,
    /// Exit with status 3 if the result is not certified complete.
    #[arg(long, global = true)]
    require_certified: bool,
    /// Write the JSON result to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pairing and norms of two classes.
    Pairing {
        #[arg(long)]
        fixture: String,
        /// Comma-separated rational coordinates.
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Rank and signature of the fixture lattice.
    Signature {
        #[arg(long)]
        fixture: String,
    },
    /// Zariski decomposition of an effective divisor over the curve list.
    Zariski {
        #[arg(long)]
        fixture: String,
        /// Comma-separated coefficients, one per fixture curve.
        #[arg(long, conflicts_with = "anti_canonical")]
        divisor: Option<String>,
        /// Use the fixture's declared anticanonical coefficients.
        #[arg(long)]
        anti_canonical: bool,
    },
    /// Enumerate classes with self-intersection -1 and canonical degree 1.
    NegCurves {
        #[arg(long)]
        fixture: String,
        /// Largest ample degree to include.
        #[arg(long, default_value_t = 3)]
        degree_bound: i64,
    },
    /// Types of a divisor's negative part.
    Types {
        #[arg(long)]
        fixture: String,
        #[arg(long, conflicts_with = "anti_canonical")]
        divisor: Option<String>,
        #[arg(long)]
        anti_canonical: bool,
    },
    /// Matrix of the fiber translation by a section class.
    MwAction {
        #[arg(long)]
        fixture: String,
        /// Section class, comma-separated.
        #[arg(long)]
        x: String,
        /// Optional class to push through the translation.
        #[arg(long)]
        apply: Option<String>,
    },
    /// Dirichlet fundamental domain for the fixture's group.
    Dirichlet {
        #[arg(long)]
        fixture: String,
        /// Squared-cosh radius of the orbit ball.
        #[arg(long, default_value_t = 25)]
        cosh_bound: i64,
        /// Include float ray coordinates for plotting.
        #[arg(long)]
        emit_plot_data: bool,
    },
    /// Locate random samples in the tiling by domain translates.
    TileCheck {
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Maximum word length when locating samples.
        #[arg(long, default_value_t = 3)]
        word_budget: usize,
        #[arg(long, default_value_t = 25)]
        cosh_bound: i64,
    },
    /// Semi-decide whether the nef cone is rational polyhedral.
    Classify {
        #[arg(long)]
        fixture: String,
        /// Strictly increasing degree bounds, comma-separated.
        #[arg(long, default_value = "1,2,3")]
        bounds: String,
    },
    /// Inspect the packaged fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Names of all packaged fixtures.
    List,
    /// Full JSON of one fixture.
    Show { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, certified) = match run(&cli) {
        Ok(pair) => pair,
        Err(e) => {
            let doc = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            emit(&cli, &doc);
            return ExitCode::from(2);
        }
    };
    emit(&cli, &value);
    if cli.require_certified && !certified {
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

fn emit(cli: &Cli, doc: &Value) {
    let text = format!("{:#}\n", doc);
    match &cli.output {
        None => print!("{text}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
            }
        }
    }
}

/// Kebab-case name of the error variant, for machine-readable output.
fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    let name: String = debug
        .chars()
        .take_while(|c| c.is_ascii_alphanumeric())
        .collect();
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

fn load_fixture(source: &str) -> Result<Fixture> {
    let path = Path::new(source);
    let looks_like_file = source.ends_with(".json") || source.contains('/') || path.is_file();
    if looks_like_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("cannot read {source}: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Malformed(format!("invalid JSON in {source}: {e}")))?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("fixture");
        jsonio::json_to_fixture(stem, &value)
    } else {
        fixtures::load(source)
    }
}

fn divisor_coeffs(
    fix: &Fixture,
    divisor: &Option<String>,
    anti_canonical: bool,
) -> Result<Vec<Rat>> {
    match (divisor, anti_canonical) {
        (Some(text), false) => {
            let coeffs = jsonio::parse_rat_vec(text)?;
            if coeffs.len() != fix.surface.curves().len() {
                return Err(Error::DimensionMismatch {
                    expected: fix.surface.curves().len(),
                    got: coeffs.len(),
                });
            }
            Ok(coeffs)
        }
        (None, true) => fix
            .surface
            .declares()
            .anti_k_coeffs
            .clone()
            .ok_or_else(|| {
                Error::Malformed("fixture declares no anticanonical coefficients".into())
            }),
        _ => Err(Error::Malformed(
            "pass exactly one of --divisor or --anti-canonical".into(),
        )),
    }
}

fn group_and_basepoint(fix: &Fixture) -> Result<(&conekit::isometry::GroupGens, Vec<Rat>)> {
    let group = fix
        .group
        .as_ref()
        .ok_or_else(|| Error::Malformed("fixture has no packaged group".into()))?;
    let y = fix
        .basepoint
        .clone()
        .ok_or_else(|| Error::Malformed("fixture has no packaged basepoint".into()))?;
    Ok((group, y))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::PolyhedralCertified => "polyhedral-certified",
        Verdict::NotPolyhedralWithinBound => "not-polyhedral-within-bound",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn cone_json(c: &PolyCone) -> Value {
    json!({
        "rays": c.rays().iter().map(|r| jsonio::ivec_to_json(r)).collect::<Vec<_>>(),
        "facets": c.facets().iter().map(|f| jsonio::ivec_to_json(f)).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    match &cli.cmd {
        Cmd::Pairing { fixture, u, v } => {
            let fix = load_fixture(fixture)?;
            let lat = fix.surface.lattice();
            let u = jsonio::parse_rat_vec(u)?;
            let v = jsonio::parse_rat_vec(v)?;
            lat.check_dim(&u)?;
            lat.check_dim(&v)?;
            let doc = json!({
                "pairing": jsonio::rat_to_json(&lat.pairing(&u, &v)),
                "u_norm": jsonio::rat_to_json(&lat.norm(&u)),
                "v_norm": jsonio::rat_to_json(&lat.norm(&v)),
            });
            Ok((doc, true))
        }
        Cmd::Signature { fixture } => {
            let fix = load_fixture(fixture)?;
            let (p, n) = fix.surface.lattice().signature();
            let doc = json!({
                "rank": fix.surface.lattice().rank(),
                "signature": [p, n],
            });
            Ok((doc, true))
        }
        Cmd::Zariski {
            fixture,
            divisor,
            anti_canonical,
        } => {
            let fix = load_fixture(fixture)?;
            let coeffs = divisor_coeffs(&fix, divisor, *anti_canonical)?;
            let z = zariski_decompose(&fix.surface, &coeffs)?;
            let names: Vec<&str> = z
                .n_support
                .iter()
                .map(|&i| fix.surface.curves()[i].name.as_str())
                .collect();
            let iitaka = match iitaka_case(&fix.surface, &z)? {
                IitakaCase::Zero => "zero",
                IitakaCase::One => "one",
                IitakaCase::Two => "two",
            };
            let doc = json!({
                "P": jsonio::rvec_to_json(&z.p),
                "N": {
                    "support": z.n_support,
                    "names": names,
                    "coeffs": jsonio::rvec_to_json(&z.n_coeffs),
                    "class": jsonio::rvec_to_json(&z.n_class(&fix.surface)),
                },
                "iitaka": iitaka,
            });
            Ok((doc, true))
        }
        Cmd::NegCurves {
            fixture,
            degree_bound,
        } => {
            let fix = load_fixture(fixture)?;
            let found = minus_one_classes(&fix.surface, *degree_bound, cli.budget)?;
            let doc = json!({
                "count": found.classes.len(),
                "complete": found.complete,
                "globally_complete": found.globally_complete,
                "degree_bound": degree_bound,
                "classes": found.classes.iter().map(|e| jsonio::ivec_to_json(e)).collect::<Vec<_>>(),
            });
            Ok((doc, found.complete))
        }
        Cmd::Types {
            fixture,
            divisor,
            anti_canonical,
        } => {
            let fix = load_fixture(fixture)?;
            let coeffs = divisor_coeffs(&fix, divisor, *anti_canonical)?;
            let z = zariski_decompose(&fix.surface, &coeffs)?;
            let types = curve_types(&fix.surface, &z)?;
            let doc = json!({
                "count": types.len(),
                "types": types.iter().map(|t| json!(t.lambdas)).collect::<Vec<_>>(),
            });
            Ok((doc, true))
        }
        Cmd::MwAction { fixture, x, apply } => {
            let fix = load_fixture(fixture)?;
            let x = jsonio::parse_rat_vec(x)?;
            let phi = mordell_weil_action(&fix.surface, &x)?;
            let m = phi.matrix();
            let rows: Vec<Value> = (0..m.rows())
                .map(|i| {
                    jsonio::rvec_to_json(&(0..m.cols()).map(|j| m.at(i, j).clone()).collect::<Vec<_>>())
                })
                .collect();
            let mut doc = json!({
                "matrix": rows,
                "x": jsonio::rvec_to_json(&x),
            });
            if let Some(target) = apply {
                let target = jsonio::parse_rat_vec(target)?;
                let image = phi.apply(&target);
                doc["image"] = jsonio::rvec_to_json(&image);
                doc["image_norm"] = jsonio::rat_to_json(&fix.surface.lattice().norm(&image));
            }
            Ok((doc, true))
        }
        Cmd::Dirichlet {
            fixture,
            cosh_bound,
            emit_plot_data,
        } => {
            let fix = load_fixture(fixture)?;
            let (group, y) = group_and_basepoint(&fix)?;
            let out = dirichlet_domain(
                fix.surface.lattice(),
                group,
                &y,
                &Ambient::PositiveCone,
                &mat::rat(*cosh_bound),
                cli.budget,
            )?;
            let words: Vec<Value> = out
                .facet_words
                .iter()
                .map(|(f, ws)| json!({"facet": jsonio::ivec_to_json(f), "words": ws}))
                .collect();
            let mut doc = json!({
                "certified": out.certified,
                "orbit_used": out.orbit_used,
                "basepoint": jsonio::ivec_to_json(&out.basepoint),
                "domain": cone_json(&out.domain),
                "boundary_rational_rays": out.boundary_rational_rays.iter()
                    .map(|r| jsonio::ivec_to_json(r)).collect::<Vec<_>>(),
                "inside_positive_cone": out.inside_positive_cone,
                "facet_words": words,
            });
            if *emit_plot_data {
                let plot: Vec<Vec<f64>> = out
                    .domain
                    .rays()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| c.to_f64().unwrap_or(f64::NAN))
                            .collect()
                    })
                    .collect();
                doc["plot"] = json!({"rays": plot});
            }
            Ok((doc.clone(), out.certified))
        }
        Cmd::TileCheck {
            fixture,
            samples,
            word_budget,
            cosh_bound,
        } => {
            let fix = load_fixture(fixture)?;
            let (group, y) = group_and_basepoint(&fix)?;
            let lat = fix.surface.lattice();
            let out = dirichlet_domain(
                lat,
                group,
                &y,
                &Ambient::PositiveCone,
                &mat::rat(*cosh_bound),
                cli.budget,
            )?;
            let mut rng = Sampler::new(cli.seed);
            let rays = out.domain.rays().to_vec();
            let signed = group.signed();
            let points: Vec<Vec<Rat>> = (0..*samples)
                .map(|_| {
                    let mut p = rng.strict_combination(&rays);
                    // push through a short random word so translate cells get hit
                    for _ in 0..rng.int_in(0, 2) {
                        let pick = rng.int_in(0, signed.len() as i64 - 1) as usize;
                        p = signed[pick].1.apply(&p);
                    }
                    p
                })
                .collect();
            let report = tile_check(
                lat,
                group,
                &out.domain,
                &Ambient::PositiveCone,
                &y,
                &points,
                *word_budget,
                cli.budget,
            )?;
            let per_sample: Vec<Value> = report
                .samples
                .iter()
                .map(|s| {
                    json!({
                        "sample": jsonio::rvec_to_json(&s.sample),
                        "multiplicity": s.multiplicity,
                        "interior_multiplicity": s.interior_multiplicity,
                        "word": s.word.as_ref().map(|w| w.to_string()),
                    })
                })
                .collect();
            let ok = report.ball_complete && report.all_covered && report.interior_conflicts == 0;
            let doc = json!({
                "samples": report.samples.len(),
                "all_covered": report.all_covered,
                "multiplicity_one": report.multiplicity_one,
                "interior_conflicts": report.interior_conflicts,
                "ball_elements": report.ball_elements,
                "ball_complete": report.ball_complete,
                "per_sample": per_sample,
            });
            Ok((doc, ok))
        }
        Cmd::Classify { fixture, bounds } => {
            let fix = load_fixture(fixture)?;
            let bounds: Vec<i64> = bounds
                .split(',')
                .map(|b| {
                    b.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Malformed(format!("bad bound {b:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let report = conekit::surface::classify_cone(&fix.surface, &bounds, cli.budget)?;
            let doc = json!({
                "verdict": verdict_str(report.verdict),
                "checked": report.checked,
                "counts": report.counts.iter().map(|(b, n)| json!([b, n])).collect::<Vec<_>>(),
            });
            Ok((doc, report.verdict == Verdict::PolyhedralCertified))
        }
        Cmd::Fixtures { action } => match action {
            FixturesCmd::List => {
                let doc = json!({"fixtures": fixtures::builtin_names()});
                Ok((doc, true))
            }
            FixturesCmd::Show { name } => {
                let fix = fixtures::load(name)?;
                Ok((jsonio::fixture_to_json(&fix), true))
            }
        },
    }
}
