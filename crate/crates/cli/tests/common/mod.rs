#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use fincat::cauchy::idempotents;
use fincat::Variance;
use fincat_cli::io::{self, Value};

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Every fixture, valid or not, as a path relative to the crate directory.
pub fn fixtures() -> Vec<String> {
    let mut out = Vec::new();
    for sub in ["fixtures", "fixtures/invalid"] {
        let mut names: Vec<String> = std::fs::read_dir(crate_dir().join(sub))
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.is_file())
            .map(|p| format!("{sub}/{}", p.file_name().unwrap().to_str().unwrap()))
            .collect();
        names.sort();
        out.extend(names);
    }
    out
}

pub fn valid_fixtures() -> Vec<(String, Value)> {
    fixtures()
        .into_iter()
        .filter(|f| !f.starts_with("fixtures/invalid/"))
        .map(|f| {
            let v = io::load(&crate_dir().join(&f)).unwrap();
            (f, v)
        })
        .collect()
}

/// Runs the installed binary from the crate directory.
pub fn run_binary(args: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fincat"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

/// Runs the command in process with paths relative to the crate directory.
pub fn run(args: &[&str]) -> fincat_cli::Outcome {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.starts_with("fixtures/") {
                crate_dir().join(a).to_string_lossy().into_owned()
            } else {
                a.to_string()
            }
        })
        .collect();
    fincat_cli::run(std::iter::once("fincat".to_string()).chain(args))
}

fn strings(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).collect()
}

/// One invocation of every subcommand on every fixture it accepts, plus
/// every well-typed pairing of fixtures for the binary subcommands. Unary
/// subcommands are also applied to files of the wrong kind, whose error
/// output must be just as stable.
pub fn invocations() -> Vec<Vec<String>> {
    let files = valid_fixtures();
    let mut out = Vec::new();
    for f in fixtures() {
        for cmd in [
            "validate", "dot", "opposite", "karoubi", "cauchy-complete", "extend", "elements", "limit", "colimit",
            "retract", "absolute-weight", "collage", "strong-monoidal", "wlimit", "wcolimit",
        ] {
            out.push(strings(&[cmd, &f]));
        }
    }
    let base_of = |v: &Value| -> Option<String> {
        match v {
            Value::SetFunctor(s) => Some(s.functor.base().name().to_string()),
            Value::Monoidal(m) => Some(m.monoidal.base().name().to_string()),
            _ => None,
        }
    };
    for (f, v) in &files {
        match v {
            Value::Category(c) => {
                for x in c.objects() {
                    let x = c.object_name(x);
                    out.push(strings(&["hom", "--category", f, "--object", x]));
                    out.push(strings(&["hom", "--category", f, "--object", x, "--contravariant"]));
                }
                for e in idempotents(c) {
                    let e = c.mor_name(e.morphism);
                    for cmd in ["split", "cauchy-point", "cauchy-extend", "realize"] {
                        out.push(strings(&[cmd, "--category", f, "--idempotent", e]));
                    }
                }
                out.push(strings(&["end", "hom", "--category", f]));
                out.push(strings(&["coend", "hom", "--category", f]));
            }
            Value::SetFunctor(s) => {
                out.push(strings(&["extend", f, "--label", "T"]));
                for (g, w) in &files {
                    let Value::SetFunctor(w) = w else { continue };
                    if w.functor.base() != s.functor.base() {
                        continue;
                    }
                    if s.functor.variance() == Variance::Covariant || w.functor.variance() == s.functor.variance() {
                        let cmd = if w.functor.variance() == Variance::Covariant { "wlimit" } else { "wcolimit" };
                        out.push(strings(&[cmd, f, "--weight", g]));
                    }
                    if w.functor.variance() == s.functor.variance() {
                        out.push(strings(&["nat", f, g]));
                        out.push(strings(&["nat", f, g, "--method", "end"]));
                    }
                    if s.functor.variance() == Variance::Contravariant && w.functor.variance() == Variance::Covariant {
                        out.push(strings(&["pairing", "--presheaf", f, "--functor", g]));
                    }
                }
            }
            Value::Functor(d) => {
                for (g, along) in &files {
                    let Value::Functor(along) = along else { continue };
                    if along.functor.source() == d.functor.source() {
                        out.push(strings(&["kan-right", "--diagram", f, "--along", g]));
                        out.push(strings(&["kan-left", "--diagram", f, "--along", g]));
                    }
                }
            }
            Value::Profunctor(p) => {
                if p.profunctor.is_endo() {
                    out.push(strings(&["end", f]));
                    out.push(strings(&["coend", f]));
                }
                for (g, q) in &files {
                    let Value::Profunctor(q) = q else { continue };
                    if p.profunctor.target() == q.profunctor.source() {
                        out.push(strings(&["profcompose", f, g]));
                    }
                }
            }
            Value::Monoidal(_) => {
                let base = base_of(v);
                for (g, a) in &files {
                    for (h, b) in &files {
                        let (Value::SetFunctor(a), Value::SetFunctor(b)) = (a, b) else { continue };
                        if base_of(&Value::SetFunctor(a.clone())) == base
                            && base_of(&Value::SetFunctor(b.clone())) == base
                            && a.functor.variance() == b.functor.variance()
                        {
                            out.push(strings(&["day", "--monoidal", f, g, h]));
                        }
                    }
                }
            }
            Value::WeightedDiagram(_) => {}
        }
    }
    let json: Vec<Vec<String>> = out
        .iter()
        .map(|a| a.iter().cloned().chain(["--format".to_string(), "json".to_string()]).collect())
        .collect();
    out.extend(json);
    out
}


/// Seed for randomized drivers, overridable through `FINCAT_SEED`.
pub fn seed() -> u64 {
    std::env::var("FINCAT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_611)
}
