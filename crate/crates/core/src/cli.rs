//! Command line front end.
//!
//! Every command prints the canonical text of its result, or a `key: value`
//! report. Domain errors print `Name: message` on stderr and exit with code 1;
//! usage errors exit with code 2. An argument of `-` is read from stdin.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};

use crate::axioms::{registry, replay, run_checks, GenConfig, Ops, AXIOM_CHECKS};
use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::func::{eval_at, fn_add, fn_inf, fn_join, fn_meet, fn_scalar, fn_sup, Probe, TreeFn};
use crate::iso::{j_inverse, j_transport};
use crate::stone::{BranchPoint, Cell, ClopenSet};
use crate::supcomp::{
    band_project, cone_add, cone_inf, cone_join, cone_meet, cone_scalar, cone_sup, fin_inf_decompose, infinity_test,
    member, pos_product, riesz_decompose, support_closure, truncation_check, Model, Report, SupElement,
};
use crate::syntax::{parse, parse_tree, Value};

#[derive(Debug, Parser)]
#[command(name = "supcone", version, about = "Exact sup-completions over the Cantor space")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Ground lattice: `bounded` (C(K)) or `full` (C^inf(K)).
    #[arg(long, global = true, default_value = "full", value_parser = parse_model)]
    pub model: Model,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    /// Maximum tree depth of generated inputs.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
    /// Print witnesses and certificates.
    #[arg(long, global = true)]
    pub witness: bool,
}

fn parse_model(s: &str) -> std::result::Result<Model, String> {
    s.parse()
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Value at a cell (`0110`, `e` for the root) or a branch point (`01(1)^w`).
    Eval {
        f: String,
        at: String,
    },
    Add {
        a: String,
        b: String,
    },
    Meet {
        a: String,
        b: String,
    },
    Join {
        a: String,
        b: String,
    },
    Sup {
        #[arg(required = true)]
        fs: Vec<String>,
    },
    Inf {
        #[arg(required = true)]
        fs: Vec<String>,
        /// A common lower bound; the infimum is then taken in the cone.
        #[arg(long)]
        lower: Option<String>,
    },
    Scalar {
        lambda: String,
        f: String,
    },
    /// Cone membership for `--model`.
    Member {
        f: String,
    },
    /// Finite/infinite decomposition `u = x + w`.
    Decompose {
        f: String,
    },
    /// `x = y + z` with `y <= u`, `z <= v`.
    Riesz {
        x: String,
        u: String,
        v: String,
    },
    /// Truncations `n·e ∧ u` and their convergence certificate.
    Truncate {
        f: String,
    },
    /// Infinity test `v = inf_λ P_{(u - λe)^+} e`.
    Inftest {
        f: String,
    },
    Product {
        a: String,
        b: String,
    },
    /// Band projection onto a clopen set such as `{0,10}`.
    Project {
        set: String,
        f: String,
    },
    /// Closure of `{u != 0}`.
    Support {
        f: String,
    },
    /// `flat` to tree, or tree to `flat` at `--to-depth` (default: tree depth).
    Transport {
        value: String,
        #[arg(long)]
        to_depth: Option<usize>,
    },
    /// Runs the cone axiom suite, or one check, or replays one trial.
    Axioms {
        #[arg(long)]
        check: Option<String>,
        #[arg(long, requires = "check")]
        trial: Option<usize>,
        /// Runs every registered check, not only the axioms.
        #[arg(long, conflicts_with = "check")]
        all: bool,
    },
    /// Parses and prints the canonical form.
    ParseCheck {
        text: String,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<String, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut input = Input { stdin, cached: None };
    match execute(&cli, &mut input) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{e}");
            1
        }
        Err(Failure::Checks(report)) => {
            let _ = writeln!(out, "{report}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

struct Input<'a> {
    stdin: &'a mut dyn Read,
    cached: Option<String>,
}

impl Input<'_> {
    fn text(&mut self, arg: &str) -> std::result::Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.cached.is_none() {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            self.cached = Some(s.trim().to_string());
        }
        Ok(self.cached.clone().unwrap_or_default())
    }

    fn tree(&mut self, arg: &str) -> std::result::Result<TreeFn, Failure> {
        Ok(parse_tree(&self.text(arg)?)?)
    }

    fn trees(&mut self, args: &[String]) -> std::result::Result<Vec<TreeFn>, Failure> {
        args.iter().map(|a| self.tree(a)).collect()
    }

    fn element(&mut self, arg: &str, model: Model) -> std::result::Result<SupElement, Failure> {
        Ok(SupElement::from_fn(self.tree(arg)?, model)?)
    }
}

fn with_witness(e: &SupElement) -> String {
    Report::new().with("u", e.u()).with("witness", e.witness()).to_string().trim_end().to_string()
}

fn report(r: Report) -> String {
    r.to_string().trim_end().to_string()
}

fn elements(input: &mut Input, args: &[String], model: Model) -> std::result::Result<Vec<SupElement>, Failure> {
    args.iter().map(|a| input.element(a, model)).collect()
}

fn execute(cli: &Cli, input: &mut Input) -> Out {
    let flags = &cli.flags;
    let model = flags.model;
    let binary = |input: &mut Input,
                  a: &str,
                  b: &str,
                  plain: fn(&TreeFn, &TreeFn) -> Result<TreeFn>,
                  cone: fn(&SupElement, &SupElement) -> Result<SupElement>|
     -> Out {
        if flags.witness {
            let (a, b) = (input.element(a, model)?, input.element(b, model)?);
            Ok(with_witness(&cone(&a, &b)?))
        } else {
            Ok(plain(&input.tree(a)?, &input.tree(b)?)?.to_string())
        }
    };
    match &cli.command {
        Command::Eval { f, at } => {
            let u = input.tree(f)?;
            let at = input.text(at)?;
            let probe = match BranchPoint::parse(&at) {
                Some(p) => Probe::Branch(p),
                None => Probe::Cell(
                    Cell::parse(&at).ok_or_else(|| Failure::Usage(format!("not a cell or branch point: {at}")))?,
                ),
            };
            Ok(eval_at(&u, &probe)?.to_string())
        }
        Command::Add { a, b } => binary(input, a, b, fn_add, cone_add),
        Command::Meet { a, b } => binary(input, a, b, |u, v| Ok(fn_meet(u, v)), cone_meet),
        Command::Join { a, b } => binary(input, a, b, |u, v| Ok(fn_join(u, v)), cone_join),
        Command::Sup { fs } => {
            if flags.witness {
                Ok(with_witness(&cone_sup(&elements(input, fs, model)?)?))
            } else {
                Ok(fn_sup(&input.trees(fs)?)?.to_string())
            }
        }
        Command::Inf { fs, lower } => match lower {
            Some(l) => {
                let lower = input.element(l, model)?;
                let r = cone_inf(&elements(input, fs, model)?, &lower)?;
                Ok(if flags.witness { with_witness(&r) } else { r.u().to_string() })
            }
            None => Ok(fn_inf(&input.trees(fs)?)?.to_string()),
        },
        Command::Scalar { lambda, f } => {
            let lambda: ExtReal = input.text(lambda)?.parse()?;
            if flags.witness {
                Ok(with_witness(&cone_scalar(&lambda, &input.element(f, model)?)?))
            } else {
                Ok(fn_scalar(&lambda, &input.tree(f)?)?.to_string())
            }
        }
        Command::Member { f } => {
            let u = input.tree(f)?;
            let w = member(&u, model)?;
            let mut r = Report::new().with("model", model).with("member", true);
            if flags.witness {
                r.push("witness", w);
            }
            Ok(report(r))
        }
        Command::Decompose { f } => Ok(report(fin_inf_decompose(&input.element(f, model)?).report())),
        Command::Riesz { x, u, v } => {
            let (x, u, v) = (input.element(x, model)?, input.element(u, model)?, input.element(v, model)?);
            let (y, z) = riesz_decompose(&x, &u, &v)?;
            let mut r = Report::new().with("y", y.u()).with("z", z.u());
            if flags.witness {
                r.push("y_witness", y.witness());
                r.push("z_witness", z.witness());
            }
            Ok(report(r))
        }
        Command::Truncate { f } => Ok(report(truncation_check(&input.element(f, model)?)?.report())),
        Command::Inftest { f } => Ok(report(infinity_test(&input.element(f, model)?)?.report())),
        Command::Product { a, b } => {
            let (a, b) = (input.element(a, model)?, input.element(b, model)?);
            let p = pos_product(&a, &b)?;
            Ok(if flags.witness { with_witness(&p) } else { p.u().to_string() })
        }
        Command::Project { set, f } => {
            let text = input.text(set)?;
            let set = ClopenSet::parse(&text).ok_or_else(|| Failure::Usage(format!("not a clopen set: {text}")))?;
            Ok(band_project(&set, &input.tree(f)?).to_string())
        }
        Command::Support { f } => Ok(support_closure(&input.tree(f)?).to_string()),
        Command::Transport { value, to_depth } => match parse(&input.text(value)?)? {
            Value::Flat(x) => Ok(j_transport(&x).to_string()),
            Value::Tree(t) => {
                let depth = to_depth.unwrap_or_else(|| t.depth());
                Ok(j_inverse(&t, depth)?.to_string())
            }
        },
        Command::Axioms { check, trial, all } => {
            let cfg = GenConfig::default().with_model(model).with_seed(flags.seed).with_depth(flags.depth);
            if let Some(name) = check {
                if !registry().iter().any(|c| c.name == name) {
                    let known: Vec<&str> = registry().iter().map(|c| c.name).collect();
                    return Err(Failure::Usage(format!("unknown check {name}; known: {}", known.join(", "))));
                }
                if let Some(t) = trial {
                    return match replay(&cfg, Ops::default(), name, *t).expect("check is registered") {
                        Ok(tags) => Ok(report(
                            Report::new()
                                .with("check", name)
                                .with("trial", t)
                                .with("tags", tags.join(","))
                                .with("result", "pass"),
                        )),
                        Err(f) => Err(Failure::Checks(format!("{f}\nresult: fail"))),
                    };
                }
            }
            let names: Vec<&str> = match check {
                Some(name) => vec![name.as_str()],
                None if *all => registry().iter().map(|c| c.name).collect(),
                None => AXIOM_CHECKS.to_vec(),
            };
            let r = run_checks(&cfg, Ops::default(), &names, flags.trials.max(1));
            if r.passed() {
                Ok(r.to_string())
            } else {
                Err(Failure::Checks(r.to_string()))
            }
        }
        Command::ParseCheck { text } => Ok(parse(&input.text(text)?)?.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        call_with_stdin(args, "")
    }

    fn call_with_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("supcone").chain(args.iter().copied());
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn add_constants() {
        assert_eq!(call(&["add", "const 1", "const 2"]), (0, "const 3\n".into(), String::new()));
    }

    #[test]
    fn member_rejects_falling_ramp_in_bounded_model() {
        let (code, out, err) = call(&["member", "--model", "bounded", "ramp(1; ; poly[0,-1])"]);
        assert_eq!(code, 1);
        assert_eq!(out, "");
        assert_eq!(err, "NotInCone: branch (1)^w limit -inf\n");
    }

    #[test]
    fn inftest_report() {
        let (code, out, _) = call(&["inftest", "split(const +inf, const 0)"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "v: split(const 1, const 0)");
        assert_eq!(lines[1], "in_Xu: false");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["add", "const 1"]).0, 2);
        assert_eq!(call(&["member", "--model", "huge", "const 1"]).0, 2);
        assert_eq!(call(&["axioms", "--check", "nope"]).0, 2);
    }

    #[test]
    fn parse_errors_exit_1() {
        let (code, _, err) = call(&["parse-check", "const 3/0"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("ParseError: at position 6"), "{err}");
    }

    #[test]
    fn stdin_argument() {
        let (code, out, _) = call_with_stdin(&["parse-check", "-"], "ramp(0; 5; poly[7])\n");
        assert_eq!((code, out.as_str()), (0, "split(const 7, const 5)\n"));
        let (code, out, _) = call_with_stdin(&["add", "-", "-"], "const 2");
        assert_eq!((code, out.as_str()), (0, "const 4\n"));
    }

    #[test]
    fn witness_flag() {
        let (code, out, _) = call(&["add", "--witness", "const +inf", "const 1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "u: const +inf\nwitness: const 1\n");
        let (_, out, _) = call(&["member", "--witness", "split(const +inf, const 2)"]);
        assert_eq!(out, "model: full\nmember: true\nwitness: split(const 0, const 2)\n");
    }

    #[test]
    fn eval_and_transport() {
        assert_eq!(call(&["eval", "ramp(1; ; poly[0, 1])", "(1)^w"]).1, "+inf\n");
        assert_eq!(call(&["eval", "ramp(1; ; poly[0, 1])", "110"]).1, "2\n");
        assert_eq!(call(&["transport", "flat d=1 [2, +inf]"]).1, "split(const 2, const +inf)\n");
        assert_eq!(call(&["transport", "split(const 2, const +inf)"]).1, "flat d=1 [2, +inf]\n");
        assert_eq!(call(&["eval", "ramp(1; ; poly[0, 1])", "1"]).0, 1);
    }

    #[test]
    fn riesz_rejection_names_a_point() {
        let (code, _, err) = call(&["riesz", "const 3", "const 1", "const 1"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("PreconditionFailed"), "{err}");
    }

    #[test]
    fn axiom_replay() {
        let (code, out, _) = call(&["axioms", "--model", "bounded", "--check", "lattice", "--trial", "3"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("result: pass\n"), "{out}");
        let (code, out, _) = call(&["axioms", "--trials", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("check sup-sup: trials=5 failures=0"), "{out}");
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["axioms", "--all", "--trials", "3", "--seed", "7"];
        assert_eq!(call(&args), call(&args));
    }
}
