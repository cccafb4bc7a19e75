//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 parse or usage error, 3 budget refusal or inconclusive search.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{base_field_algebra, Algebra};
use crate::audit;
use crate::bimodule::NFoldBimodule;
use crate::classify::{self, ClassificationConfig, PruneConfig};
use crate::constructions::{self, MoritaContext, FamilyParams};
use crate::enumerate;
use crate::equiv;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::hopf::HopfAlgebra;
use crate::io;
use crate::smc::SmcStructure;
use crate::tensor::TensorSpace;

/// Environment variable overriding every search budget.
pub const BUDGET_ENV: &str = "SMCMOD_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "smcmod", version, about = "Closed symmetric monoidal structures on module categories of small algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Tensor,
    H0,
    H1,
    Parametric,
    CharNe2,
    Hopf,
    Morita,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify structures on a ring within dimension bounds.
    Classify {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        max_lambda_dim: Option<usize>,
        #[arg(long)]
        max_unit_dim: Option<usize>,
        #[arg(long)]
        picard_dim: Option<usize>,
        /// Use the parametric family of k[x]/(x^2) in characteristic 2.
        #[arg(long)]
        fastpath: bool,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Disable the faithfulness, unit and swap prunes.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        no_audit: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory receiving representatives and witnesses.
        #[arg(long)]
        certs: Option<PathBuf>,
    },
    /// Re-verify a structure file (`-` reads standard input).
    Check {
        #[arg(long, default_value = "-")]
        structure: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Search for an equivalence between two structures.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        picard_dim: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List invertible bimodules up to a dimension bound.
    Picard {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Build a named structure.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Field as `p`, `p^e` or an order `q`.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        ring: Option<PathBuf>,
        #[arg(long)]
        hopf: Option<PathBuf>,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        b1: Elem,
        #[arg(long, default_value_t = 0)]
        beta: Elem,
        #[arg(long, default_value_t = 0)]
        gamma: Elem,
        /// Matrix size for the Morita transport.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fold tensor of two module files.
    Tensor {
        m: PathBuf,
        n: PathBuf,
        /// 1-based slot of the first module.
        #[arg(long, default_value_t = 1)]
        slot: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate modules of a fixed dimension up to isomorphism.
    Modules {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        fold: usize,
        #[arg(long)]
        enumerate: bool,
    },
    /// Structural audit of a structure file.
    Audit {
        structure: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::InvalidArgument(_) | Error::Precondition(_) => EXIT_PARSE,
        Error::Budget { .. } | Error::Inconclusive(_) => EXIT_BUDGET,
        Error::Verification(_) => EXIT_VERIFICATION,
    }
}

/// Field from `p`, `p^e` or a prime power order.
pub fn parse_field(s: &str) -> Result<Arc<FiniteField>> {
    let bad = || Error::InvalidArgument(format!("cannot read a field from `{s}`"));
    let (p, e) = match s.split_once('^') {
        Some((p, e)) => (p.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?),
        None => {
            let q: usize = s.trim().parse().map_err(|_| bad())?;
            let p = (2..=q).find(|d| q % d == 0).ok_or_else(bad)?;
            let mut e = 0;
            let mut r = q;
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            if r != 1 {
                return Err(bad());
            }
            (p, e)
        }
    };
    Ok(Arc::new(FiniteField::new(p, e)?))
}

fn budget_override() -> Result<Option<u128>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV} must be a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{}: {msg}", path.display()) },
        other => other,
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => io::write_atomic(p, text),
        None => {
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_ring(path: &Path) -> Result<Arc<Algebra>> {
    Ok(Arc::new(io::load_algebra(path).map_err(|e| located(path, e))?))
}

fn load_structure(path: &Path, stdin: &mut dyn Read) -> Result<SmcStructure> {
    io::parse_structure(&read_input(path, stdin)?).map_err(|e| located(path, e))
}

/// Run the command line `args` (including the program name).
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: Command, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let budget = budget_override()?;
    match cmd {
        Command::Classify {
            ring,
            max_lambda_dim,
            max_unit_dim,
            picard_dim,
            fastpath,
            shards,
            no_prune,
            no_audit,
            seed,
            out,
            certs,
        } => {
            let r = load_ring(&ring)?;
            let mut cfg = ClassificationConfig::for_ring(&r);
            cfg.max_lambda_dim = max_lambda_dim.unwrap_or(cfg.max_lambda_dim);
            cfg.max_unit_dim = max_unit_dim.unwrap_or(cfg.max_unit_dim);
            cfg.picard_dim = picard_dim.unwrap_or(cfg.picard_dim);
            cfg.shards = shards;
            cfg.audit = !no_audit;
            cfg.seed = seed.unwrap_or(cfg.seed);
            if no_prune {
                cfg.prune = PruneConfig::NONE;
            }
            if let Some(b) = budget {
                cfg.enum_cap = b;
                cfg.solve_cap = b;
                cfg.equiv_cap = b;
            }
            let start = std::time::Instant::now();
            let report = if fastpath { classify::classify_fastpath_char2(&r, &cfg)? } else { classify::classify(&r, &cfg)? };
            let _ = writeln!(stderr, "classification finished in {:.3}s", start.elapsed().as_secs_f64());
            if let Some(dir) = &certs {
                report.write_certificates(dir)?;
                if !report.reverify_certificates(dir)? {
                    return Err(Error::Verification("a written certificate does not re-verify".into()));
                }
            }
            emit(out.as_deref(), &report.to_text(), stdout)?;
            let audits_ok = report.classes.iter().all(|c| c.audit.as_ref().map_or(true, |a| a.passed()));
            Ok(if audits_ok { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Check { structure, witness } => {
            let s = load_structure(&structure, stdin)?;
            let report = s.coherence_report()?;
            write!(stdout, "{report}")?;
            let mut ok = report.all_pass();
            if let Some(wp) = witness {
                let text = std::fs::read_to_string(&wp)?;
                let (src, dst, w) = io::parse_witness(&text).map_err(|e| located(&wp, e))?;
                let coherent = src.is_coherent()? && dst.is_coherent()?;
                let valid = coherent && w.picard.verify()? && equiv::check_witness(&src, &dst, &w)?;
                let matches = src == s || dst == s;
                writeln!(stdout, "witness: {}", if valid && matches { "pass" } else { "FAIL" })?;
                ok &= valid && matches;
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Equiv { a, b, picard_dim, out } => {
            let sa = load_structure(&a, stdin)?;
            let sb = load_structure(&b, stdin)?;
            for (p, s) in [(&a, &sa), (&b, &sb)] {
                if !s.is_coherent()? {
                    return Err(Error::Verification(format!("{} is not coherent", p.display())));
                }
            }
            let r = sa.algebra().clone();
            let cap = budget.unwrap_or(equiv::DEFAULT_EQUIV_CAP);
            let picard = equiv::picard_enumerate(&r, picard_dim.unwrap_or(r.dim()), budget.unwrap_or(enumerate::DEFAULT_ENUM_CAP))?;
            match equiv::equiv_test(&sa, &sb, &picard, cap)? {
                Some(w) => {
                    writeln!(stdout, "equivalent via X of dimension {}", w.picard.x.dim())?;
                    if let Some(o) = out {
                        io::write_atomic(&o, &io::witness_to_text(&sa, &sb, &w))?;
                    }
                }
                None => writeln!(stdout, "inequivalent within Picard bound {}", picard_dim.unwrap_or(r.dim()))?,
            }
            Ok(EXIT_OK)
        }
        Command::Picard { ring, max_dim } => {
            let r = load_ring(&ring)?;
            let bound = max_dim.unwrap_or(r.dim());
            let els = equiv::picard_enumerate(&r, bound, budget.unwrap_or(enumerate::DEFAULT_ENUM_CAP))?;
            writeln!(stdout, "picard elements: {} (dimension <= {bound})", els.len())?;
            for (i, p) in els.iter().enumerate() {
                writeln!(stdout, "[element {}]", i + 1)?;
                write!(stdout, "{}", io::bimodule_to_text(&p.x, &ring.display().to_string()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Construct { family, field, ring, hopf, module, b1, beta, gamma, n, out } => {
            let need_field = || -> Result<Arc<FiniteField>> {
                parse_field(field.as_deref().ok_or_else(|| Error::InvalidArgument("--field is required".into()))?)
            };
            let s = match family {
                Family::Tensor => {
                    let r = match &ring {
                        Some(p) => load_ring(p)?,
                        None => Arc::new(base_field_algebra(need_field()?)?),
                    };
                    constructions::standard_structure(&r)?
                }
                Family::H0 => constructions::hopf_structure(&HopfAlgebra::h0(need_field()?)?)?,
                Family::H1 => constructions::hopf_structure(&HopfAlgebra::h1(need_field()?)?)?,
                Family::Parametric => constructions::parametric_structure(&FamilyParams::new(need_field()?, b1, beta, gamma)?)?,
                Family::Hopf => {
                    let p = hopf.ok_or_else(|| Error::InvalidArgument("--hopf is required".into()))?;
                    constructions::hopf_structure(&io::load_hopf(&p).map_err(|e| located(&p, e))?)?
                }
                Family::CharNe2 => {
                    let m = match &module {
                        Some(p) => io::load_bimodule(p).map_err(|e| located(p, e))?,
                        None => {
                            let r = Arc::new(crate::algebra::group_algebra(need_field()?, &[2])?);
                            NFoldBimodule::zero(r, 0)
                        }
                    };
                    constructions::char_ne2_structure(&Arc::new(m))?
                }
                Family::Morita => {
                    let ctx = MoritaContext::matrix(need_field()?, n)?;
                    let s = constructions::standard_structure(&ctx.source)?;
                    constructions::morita_transport(&s, &ctx)?
                }
            };
            emit(out.as_deref(), &io::structure_to_text(&s), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Tensor { m, n, slot, out } => {
            let mm = io::load_bimodule(&m).map_err(|e| located(&m, e))?;
            let text = std::fs::read_to_string(&n)?;
            let nn = io::parse_bimodule_with(&text, mm.algebra()).map_err(|e| located(&n, e))?;
            if slot == 0 {
                return Err(Error::InvalidArgument("slots are numbered from 1".into()));
            }
            let space = TensorSpace::binary(Arc::new(mm), slot - 1, Arc::new(nn))?;
            let alg_path = first_value(&std::fs::read_to_string(&m)?, "algebra").unwrap_or_default();
            emit(out.as_deref(), &io::bimodule_to_text(space.module(), &alg_path), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Modules { ring, dim, fold, enumerate } => {
            let r = load_ring(&ring)?;
            let cap = budget.unwrap_or(enumerate::DEFAULT_ENUM_CAP);
            let mods = enumerate::enumerate_bimodules(&r, fold, dim, cap)?;
            writeln!(stdout, "modules: {} (fold {fold}, dimension {dim})", mods.len())?;
            if enumerate {
                for (i, m) in mods.iter().enumerate() {
                    writeln!(stdout, "[module {}]", i + 1)?;
                    write!(stdout, "{}", io::bimodule_to_text(m, &ring.display().to_string()))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Audit { structure, seed } => {
            let s = load_structure(&structure, stdin)?;
            if !s.is_coherent()? {
                writeln!(stdout, "structure is not coherent")?;
                return Ok(EXIT_VERIFICATION);
            }
            let rep = audit::structural_audit_with(&s, audit::DEFAULT_REFLECTION_SAMPLES, seed.unwrap_or(audit::DEFAULT_AUDIT_SEED))?;
            write!(stdout, "{}", rep.to_text())?;
            Ok(if rep.passed() { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

fn first_value(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.trim_start().strip_prefix(':')).map(|v| v.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn field_arguments() {
        assert_eq!(parse_field("4").unwrap().order(), 4);
        assert_eq!(parse_field("3^2").unwrap().order(), 9);
        assert!(parse_field("6").is_err());
    }

    #[test]
    fn construct_then_check() {
        let (code, text, _) = run_str(&["smcmod", "construct", "--family", "h0", "--field", "2"], "");
        assert_eq!(code, 0);
        let (code, out, _) = run_str(&["smcmod", "check"], &text);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let (code, _, _) = run_str(&["smcmod", "check", "--frobnicate"], "");
        assert_eq!(code, EXIT_PARSE);
    }

    #[test]
    fn incoherent_parameters_are_refused() {
        let (code, _, err) = run_str(&["smcmod", "construct", "--family", "parametric", "--field", "2", "--gamma", "1"], "");
        assert_eq!(code, EXIT_VERIFICATION, "{err}");
    }

    #[test]
    fn malformed_structure_reports_position() {
        let (code, _, err) = run_str(&["smcmod", "check"], "[algebra]\nfield: 2^1\ndim: x\n");
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("line 3"), "{err}");
    }
}
