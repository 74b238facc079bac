use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::{Path, PathBuf};

use clusterkit::morphism::{specialize, IdealOptions, IdealStatus, MorphismError, MorphismSpec};
use clusterkit::pairs::{classify_cotorsion_pairs, enumerate_complete_pairs, CoreEntry, CotorsionClassification};
use clusterkit::seed::SeedJson;
use clusterkit::{EnumerationLimits, IceQuiver, Seed, SeedError, Var};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::{format_of, Budget, Command, Format};

pub struct Outcome {
    pub output: String,
    /// The verdict is negative; exit status 1.
    pub negative: bool,
}

type CliResult = Result<Outcome, String>;

fn json_text<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

fn ok<T: Serialize + ?Sized>(value: &T) -> CliResult {
    Ok(Outcome {
        output: json_text(value),
        negative: false,
    })
}

fn negative<T: Serialize + ?Sized>(value: &T) -> CliResult {
    Ok(Outcome {
        output: json_text(value),
        negative: true,
    })
}

fn text(output: String) -> CliResult {
    Ok(Outcome { output, negative: false })
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse_seed_text(text: &str, origin: &str) -> Result<Seed, String> {
    let json: SeedJson = serde_json::from_str(text).map_err(|e| format!("{origin}: {e}"))?;
    Seed::try_from(json).map_err(|e| format!("{origin}: {e}"))
}

/// Reads a seed without checking skew-symmetrizability.
fn load_unchecked(path: &Path) -> Result<Seed, String> {
    parse_seed_text(&read_input(path)?, &path.display().to_string())
}

fn load_seed(path: &Path) -> Result<Seed, String> {
    let seed = load_unchecked(path)?;
    seed.validate().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(seed)
}

/// Reads a morphism; seeds given as paths are relative to the morphism file.
fn load_morphism(path: &Path) -> Result<MorphismSpec, String> {
    let text = read_input(path)?;
    let base: PathBuf = match path.parent() {
        Some(dir) if path != Path::new("-") => dir.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let resolve = |p: &str| -> Result<Seed, MorphismError> {
        load_seed(&base.join(p)).map_err(MorphismError::Malformed)
    };
    let spec = MorphismSpec::from_json_str_with(&text, resolve).map_err(|e| format!("{}: {e}", path.display()))?;
    for seed in [spec.source(), spec.target()] {
        seed.validate().map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(spec)
}

fn seed_budget() -> Result<usize, String> {
    match std::env::var("CLUSTERKIT_MAX_SEEDS") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| format!("CLUSTERKIT_MAX_SEEDS must be a nonnegative integer, got {value:?}")),
        Err(_) => Ok(EnumerationLimits::default().max_seeds),
    }
}

fn limits(budget: Budget) -> Result<EnumerationLimits, String> {
    Ok(EnumerationLimits::new(
        budget.max_seeds.map_or_else(seed_budget, Ok)?,
        budget.max_depth.unwrap_or(EnumerationLimits::default().max_depth),
    ))
}

fn parse_pair(text: &str) -> Result<(Var, Var), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("pair {text:?} is not of the form a:b"))?;
    let var = |s: &str| Var::new(s.trim()).map_err(|e| format!("pair {text:?}: {e}"));
    Ok((var(a)?, var(b)?))
}

fn parse_drop(text: &str) -> Result<(Var, BigInt), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("drop {text:?} is not of the form var=int"))?;
    let var = Var::new(name.trim()).map_err(|e| format!("drop {text:?}: {e}"))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| format!("drop {text:?}: {value:?} is not an integer"))?;
    Ok((var, value))
}

fn seed_error(e: SeedError) -> String {
    e.to_string()
}

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Validate { seed } => validate(&seed),
        Command::Mutate { seed, at, seq } => {
            let seed = load_seed(&seed)?;
            let seq = match (at, seq) {
                (Some(x), _) => vec![x],
                (None, Some(seq)) => seq,
                (None, None) => Vec::new(),
            };
            ok(&seed.apply_sequence(&seq).map_err(seed_error)?)
        }
        Command::Variables { seed, budget } => {
            let seed = load_seed(&seed)?;
            let class = seed.enumerate_class(limits(budget)?).map_err(seed_error)?;
            let vars = class.cluster_variables();
            ok(&json!({
                "complete": class.complete(),
                "seeds": class.len(),
                "depth_reached": class.depth_reached(),
                "exchangeable": vars.exchangeable.iter().map(|p| p.to_fraction_string()).collect::<Vec<_>>(),
                "frozen": vars.frozen.iter().map(|p| p.to_fraction_string()).collect::<Vec<_>>(),
            }))
        }
        Command::ExchangeGraph { seed, budget, dot, format } => {
            let seed = load_seed(&seed)?;
            let class = seed.enumerate_class(limits(budget)?).map_err(seed_error)?;
            match format_of(dot, format) {
                Format::Dot => text(class.to_dot()),
                Format::Json => ok(&class.graph()),
            }
        }
        Command::Decompose { seed, out_dir } => decompose(&load_seed(&seed)?, out_dir.as_deref()),
        Command::Glue { first, second, pairs } => {
            let a = load_seed(&first)?;
            let b = load_seed(&second)?;
            let pairing = pairs.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>, _>>()?;
            ok(&a.glue(&b, &pairing).map_err(seed_error)?)
        }
        Command::Freeze { seed, at } => {
            let seed = load_seed(&seed)?;
            ok(&seed.freeze(&at.into_iter().collect()).map_err(seed_error)?)
        }
        Command::Specialize { seed, drops } => {
            let seed = load_seed(&seed)?;
            let values = drops.iter().map(|d| parse_drop(d)).collect::<Result<BTreeMap<_, _>, _>>()?;
            let spec = specialize(&seed, &values).map_err(|e| e.to_string())?;
            ok(&spec.to_json())
        }
        Command::Quiver { seed, dot, format } => {
            let seed = load_seed(&seed)?;
            let quiver = IceQuiver::of_seed(&seed).map_err(seed_error)?;
            match format_of(dot, format) {
                Format::Dot => text(quiver.to_dot()),
                Format::Json => ok(&quiver),
            }
        }
        Command::CheckMorphism { morphism, depth } => {
            let spec = load_morphism(&morphism)?;
            let depth = depth.unwrap_or_else(|| spec.default_depth());
            let verdict = spec.check(depth).map_err(|e| e.to_string())?;
            if verdict.is_morphism() {
                ok(&verdict)
            } else {
                negative(&verdict)
            }
        }
        Command::ImageSeed { morphism } => {
            let spec = load_morphism(&morphism)?;
            let verdict = spec.check(0).map_err(|e| e.to_string())?;
            if !(verdict.cm1.passed() && verdict.cm2.passed()) {
                return negative(&verdict);
            }
            ok(&spec.image_seed())
        }
        Command::IdealCheck { morphism, depth, degree_bound } => {
            let spec = load_morphism(&morphism)?;
            let mut options = IdealOptions::new(depth.unwrap_or_else(|| spec.default_depth()));
            options.degree_bound = degree_bound;
            options.max_seeds = seed_budget()?;
            match spec.ideal_check(&options) {
                Ok(verdict) if matches!(verdict.status, IdealStatus::NotIdeal { .. }) => negative(&verdict),
                Ok(verdict) => ok(&verdict),
                Err(MorphismError::NotAMorphism(detail)) => {
                    negative(&json!({"status": "not_a_morphism", "detail": detail}))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::AnalyzeInjection { morphism } => {
            let spec = load_morphism(&morphism)?;
            match spec.analyze_injection() {
                Ok(report) => ok(&report),
                Err(e @ MorphismError::NotInjective(_)) => {
                    negative(&json!({"status": "not_injective", "detail": e.to_string()}))
                }
                Err(e @ MorphismError::NotComponentEmbedding(_)) => {
                    negative(&json!({"status": "not_component_embedding", "detail": e.to_string()}))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::CompletePairs { seed, freeze, all, force } => {
            let seed = load_seed(&seed)?;
            if all {
                return ok(&classify_cotorsion_pairs(&seed, force).map_err(|e| e.to_string())?);
            }
            let ex0: BTreeSet<Var> = freeze.unwrap_or_default().into_iter().collect();
            let pairs = enumerate_complete_pairs(&seed, &ex0).map_err(|e| e.to_string())?;
            ok(&CotorsionClassification {
                assumes_functorially_finite: true,
                cores: vec![CoreEntry {
                    freezing_set: seed.ex().iter().filter(|v| ex0.contains(*v)).cloned().collect(),
                    pairs,
                }],
            })
        }
        Command::Serve { port, host } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            let addr = std::net::SocketAddr::new(host, port);
            eprintln!("clusterkit: listening on http://{addr}");
            runtime
                .block_on(clusterkit_server::serve(addr))
                .map_err(|e| format!("server on {addr}: {e}"))?;
            text(String::new())
        }
    }
}

fn validate(path: &Path) -> CliResult {
    let seed = load_unchecked(path)?;
    match seed.validate() {
        Ok(d) => ok(&json!({"valid": true, "symmetrizer": d})),
        Err(e @ SeedError::NotSkewSymmetrizable(_)) => {
            negative(&json!({"valid": false, "reason": e.to_string()}))
        }
        Err(e) => Err(format!("{}: {e}", path.display())),
    }
}

fn decompose(seed: &Seed, out_dir: Option<&Path>) -> CliResult {
    let decomposition = seed.decompose();
    let Some(dir) = out_dir else {
        return ok(&decomposition);
    };
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let write = |name: String, contents: String| -> Result<String, String> {
        let path = dir.join(&name);
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path.display().to_string())
    };
    let mut components = Vec::new();
    for (k, c) in decomposition.components.iter().enumerate() {
        components.push(write(format!("component_{}.json", k + 1), json_text(c))?);
    }
    let identification = write(
        "identification.json".into(),
        json_text(&json!({
            "identification": decomposition.identification,
            "isolated_frozen": decomposition.isolated_frozen(),
        })),
    )?;
    ok(&json!({"components": components, "identification": identification}))
}
