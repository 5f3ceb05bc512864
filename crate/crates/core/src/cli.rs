//! The `tc` command line. [`run`] does all the work and returns the exit
//! code with the text and structured reports; `main` only prints them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::freenil::{build_free_nilpotent_bounded, FreenilError, DEFAULT_MAX_HIRSCH};
use crate::oracle::{brute_force_reidemeister, OracleError, DEFAULT_MAX_ORDER};
use crate::pc::{
    check_map, parse_automorphism, parse_presentation, parse_word, write_presentation, GroupMap, MapKind, PcError,
    PcPresentation,
};
use crate::twisted::{
    decide, fix_subgroup, formanek_fixed, infinity_witness_uc, reidemeister, render_result, result_json,
    spectrum_sample, theorem2_rinf, witness_json, witness_string, SpectrumValue, TwistedError,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    /// 0 on success, 1 when the mathematics does not apply, 2 on bad input.
    pub code: i32,
    pub text: String,
    pub json: Option<Value>,
}

#[derive(Parser, Debug)]
#[command(
    name = "tc",
    about = "Twisted conjugacy in finitely generated nilpotent groups",
    version
)]
struct Cli {
    /// Print the structured report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation and run the consistency checks.
    Check { group: PathBuf },
    /// Build the free nilpotent group of rank r and class c.
    Freenil {
        r: usize,
        c: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_HIRSCH)]
        max_hirsch: usize,
    },
    /// Check that the given images define an automorphism.
    AutCheck { group: PathBuf, aut: PathBuf },
    /// Reidemeister number of an automorphism.
    Reidemeister {
        group: PathBuf,
        aut: PathBuf,
        /// List class representatives.
        #[arg(long)]
        reps: bool,
    },
    /// Generators of the fixed subgroup.
    Fix { group: PathBuf, aut: PathBuf },
    /// Find x with (xφ)·g = f·x.
    Decide {
        group: PathBuf,
        aut: PathBuf,
        g: String,
        f: String,
    },
    /// Look for a fixed vector on an upper central factor.
    Rinf { group: PathBuf, aut: PathBuf },
    /// Evaluate both classification predicates for N_{r,c}.
    RinfFormanek { r: usize, c: usize },
    /// Reidemeister numbers of random automorphisms.
    Spectrum {
        group: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Compare with orbit enumeration in a finite group.
    Oracle {
        group: PathBuf,
        aut: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        bound: u128,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }

    fn inapplicable(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<PcError> for Failure {
    fn from(e: PcError) -> Self {
        match e {
            PcError::RelationViolated(_) | PcError::NotBijective | PcError::KernelNotPreserved => {
                Failure::inapplicable(e.to_string())
            }
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<TwistedError> for Failure {
    fn from(e: TwistedError) -> Self {
        match e {
            TwistedError::Pc(p) => p.into(),
            _ => Failure::inapplicable(e.to_string()),
        }
    }
}

impl From<FreenilError> for Failure {
    fn from(e: FreenilError) -> Self {
        match e {
            FreenilError::Pc(p) => p.into(),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::inapplicable(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<Arc<PcPresentation>, Failure> {
    Ok(Arc::new(parse_presentation(&read(path)?)?))
}

fn load_aut(g: &Arc<PcPresentation>, path: &Path) -> Result<(String, GroupMap), Failure> {
    let spec = parse_automorphism(&read(path)?, g)?;
    let map = check_map(g, g, spec.images, MapKind::Automorphism)?;
    Ok((spec.name, map))
}

/// Report skeleton with every structured field present.
fn report(command: &str) -> BTreeMap<&'static str, Value> {
    let mut m = BTreeMap::new();
    m.insert("command", json!(command));
    for k in ["group", "aut", "result", "count", "representatives", "witness", "seed"] {
        m.insert(k, Value::Null);
    }
    m
}

fn finish(m: BTreeMap<&'static str, Value>, text: String) -> Output {
    Output {
        text,
        json: Value::Object(m.into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
        code: 0,
    }
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Check { group } => {
            let g = load_group(&group)?;
            let mut m = report("check");
            m.insert("group", json!(g.name()));
            m.insert("result", json!("consistent"));
            m.insert("class", json!(g.class()));
            m.insert("generators", json!(g.len()));
            m.insert("hirsch_length", json!(g.hirsch_length()));
            let text = format!(
                "{}: consistent, {} generators, class {}, Hirsch length {}\n",
                g.name(),
                g.len(),
                g.class(),
                g.hirsch_length()
            );
            Ok(finish(m, text))
        }
        Command::Freenil {
            r,
            c,
            output,
            max_hirsch,
        } => {
            let g = build_free_nilpotent_bounded(r, c, max_hirsch)?;
            let body = write_presentation(&g);
            let mut m = report("freenil");
            m.insert("group", json!(g.name()));
            m.insert("generators", json!(g.len()));
            m.insert("weights", json!(g.weights()));
            let text = match output {
                Some(path) => {
                    fs::write(&path, &body).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                    m.insert("output", json!(path.display().to_string()));
                    format!("wrote {} ({} generators) to {}\n", g.name(), g.len(), path.display())
                }
                None => body,
            };
            Ok(finish(m, text))
        }
        Command::AutCheck { group, aut } => {
            let g = load_group(&group)?;
            let (name, _) = load_aut(&g, &aut)?;
            let mut m = report("aut-check");
            m.insert("group", json!(g.name()));
            m.insert("aut", json!(name));
            m.insert("result", json!("automorphism"));
            Ok(finish(m, format!("{name} is an automorphism of {}\n", g.name())))
        }
        Command::Reidemeister { group, aut, reps } => {
            let g = load_group(&group)?;
            let (name, phi) = load_aut(&g, &aut)?;
            let r = reidemeister(&phi)?;
            let mut m = report("reidemeister");
            m.insert("group", json!(g.name()));
            m.insert("aut", json!(name));
            if let Value::Object(fields) = result_json(&g, &r) {
                for (k, v) in fields {
                    let key = ["result", "count", "representatives", "witness"]
                        .into_iter()
                        .find(|x| *x == k)
                        .expect("known field");
                    m.insert(key, v);
                }
            }
            Ok(finish(m, render_result(&g, &r, reps)))
        }
        Command::Fix { group, aut } => {
            let g = load_group(&group)?;
            let (name, phi) = load_aut(&g, &aut)?;
            let fix = fix_subgroup(&phi)?;
            let words: Vec<String> = fix.gens().iter().map(|x| g.word_string(x)).collect();
            let mut m = report("fix");
            m.insert("group", json!(g.name()));
            m.insert("aut", json!(name));
            m.insert("result", json!(if fix.is_trivial() { "trivial" } else { "nontrivial" }));
            m.insert("generators", json!(words));
            let text = if words.is_empty() {
                "Fix = 1\n".to_string()
            } else {
                format!("Fix = <{}>\n", words.join(", "))
            };
            Ok(finish(m, text))
        }
        Command::Decide {
            group,
            aut,
            g: gw,
            f: fw,
        } => {
            let g = load_group(&group)?;
            let (name, phi) = load_aut(&g, &aut)?;
            let x = g.evaluate(&parse_word(&gw, g.gen_names())?);
            let y = g.evaluate(&parse_word(&fw, g.gen_names())?);
            let w = decide(&phi, &x, &y)?;
            let mut m = report("decide");
            m.insert("group", json!(g.name()));
            m.insert("aut", json!(name));
            m.insert(
                "result",
                json!(if w.is_some() { "equivalent" } else { "not equivalent" }),
            );
            m.insert("witness", json!(w.as_ref().map(|w| g.word_string(w))));
            let text = match &w {
                Some(w) => format!("equivalent, x = {}\n", g.word_string(w)),
                None => "not equivalent\n".to_string(),
            };
            Ok(finish(m, text))
        }
        Command::Rinf { group, aut } => {
            let g = load_group(&group)?;
            let (name, phi) = load_aut(&g, &aut)?;
            let w = infinity_witness_uc(&phi)?;
            let mut m = report("rinf");
            m.insert("group", json!(g.name()));
            m.insert("aut", json!(name));
            m.insert("result", json!(if w.is_some() { "infinite" } else { "no witness" }));
            m.insert("witness", w.as_ref().map_or(Value::Null, |w| witness_json(&g, w)));
            let text = match &w {
                Some(w) => format!("R = infinite ({})\n", witness_string(&g, w)),
                None => "no fixed vector on any upper central factor\n".to_string(),
            };
            Ok(finish(m, text))
        }
        Command::RinfFormanek { r, c } => {
            if r < 2 || c < 2 {
                return Err(Failure::input("rank and class must be at least 2"));
            }
            let (f, t) = (formanek_fixed(r, c), theorem2_rinf(r, c));
            let mut m = report("rinf-formanek");
            m.insert("group", json!(format!("N{r}_{c}")));
            m.insert("formanek_fixed", json!(f));
            m.insert("theorem2_rinf", json!(t));
            let text =
                format!("N{r}_{c}: every automorphism has a fixed point: {f}; R-infinity criterion holds: {t}\n");
            Ok(finish(m, text))
        }
        Command::Spectrum { group, samples, seed } => {
            let g = load_group(&group)?;
            let result = spectrum_sample(&g, samples, seed)?;
            let mut histogram: BTreeMap<SpectrumValue, usize> = BTreeMap::new();
            let mut text = String::new();
            let mut rows = Vec::new();
            for s in &result {
                *histogram.entry(s.value).or_default() += 1;
                text.push_str(&format!(
                    "{:>4}  R = {:<8}  {}\n",
                    s.index,
                    s.value.to_string(),
                    s.map.image_words().join(", ")
                ));
                rows.push(json!({"index": s.index, "images": s.map.image_words(), "value": s.value.to_string()}));
            }
            text.push_str("values:");
            for (v, n) in &histogram {
                text.push_str(&format!(" {v}x{n}"));
            }
            text.push('\n');
            let mut m = report("spectrum");
            m.insert("group", json!(g.name()));
            m.insert("seed", json!(seed));
            m.insert("count", json!(samples));
            m.insert("samples", json!(rows));
            m.insert(
                "histogram",
                json!(histogram
                    .iter()
                    .map(|(v, n)| json!({"value": v.to_string(), "count": n}))
                    .collect::<Vec<_>>()),
            );
            Ok(finish(m, text))
        }
        Command::Oracle { group, aut, bound } => {
            let g = load_group(&group)?;
            let (name, phi) = load_aut(&g, &aut)?;
            let brute = brute_force_reidemeister(&phi, bound)?;
            let r = reidemeister(&phi)?;
            let main = r.count();
            let reps = r.representatives();
            let mut orbits: Vec<usize> = reps.iter().map(|x| brute.orbit(x)).collect();
            orbits.sort_unstable();
            orbits.dedup();
            let agree = main == Some(brute.count) && orbits.len() == reps.len();
            let mut m = report("oracle");
            m.insert("group", json!(g.name()));
            m.insert("aut", json!(name));
            m.insert("result", json!(if agree { "agree" } else { "disagree" }));
            m.insert("count", json!(main));
            m.insert("oracle_count", json!(brute.count));
            let text = format!(
                "layered: {}, orbit enumeration: {}, {}\n",
                main.map_or("infinite".to_string(), |n| n.to_string()),
                brute.count,
                if agree { "agree" } else { "DISAGREE" }
            );
            let mut out = finish(m, text);
            if !agree {
                out.code = 1;
            }
            Ok(out)
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult {
                code,
                text: e.render().to_string(),
                json: None,
            };
        }
    };
    let as_json = cli.json;
    match dispatch(cli.command) {
        Ok(out) => {
            let text = if as_json {
                let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
                s.push('\n');
                s
            } else {
                out.text
            };
            CommandResult {
                code: out.code,
                text,
                json: Some(out.json),
            }
        }
        Err(f) => CommandResult {
            code: f.code,
            text: format!("error: {}\n", f.msg),
            json: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["tc", "frobnicate"]).code, 2);
        assert_eq!(run(["tc", "spectrum", "g.pc"]).code, 2);
        assert_eq!(run(["tc", "check", "/nonexistent/file.pc"]).code, 2);
        assert_eq!(run(["tc", "--help"]).code, 0);
    }

    #[test]
    fn predicates_command() {
        let out = run(["tc", "rinf-formanek", "2", "8"]);
        assert_eq!(out.code, 0);
        let j = out.json.unwrap();
        assert_eq!(j["formanek_fixed"], json!(true));
        assert_eq!(j["theorem2_rinf"], json!(true));
    }
}
