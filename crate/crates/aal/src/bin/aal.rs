//! Command-line front end: load algebra/poset/frame files, run the
//! check suites, print tab-separated deterministic reports.
//!
//! Exit codes: 0 all checks passed, 1 a check failed (the report
//! carries a witness), 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use aal::algebra::FiniteAlgebra;
use aal::congruence::{
    classify_identity, congruence_lattice, greatest_proper_congruence, is_reduced_matrix,
    leibniz_congruence,
};
use aal::demorgan::{named as named_dmm, named_solutions, rt_il_weml_check, validate_dmm, NamedDmm};
use aal::enumerate::{enumerate_lattices, enumerate_lattices_brute};
use aal::error::Error;
use aal::files;
use aal::filters::{
    filter_lattice, filter_lattice_principal_join, verify_il_sequence, weml_eml_on_filters,
    Builtin, FilterSystem, IlLeg, IlSequence,
};
use aal::heyting::{kc_bridge_report, kc_holds, upset_algebra, validate_heyting};
use aal::lattice::{lattice_from_order, FiniteLattice, SemilatticeProp, TheoremKind};
use aal::limits::Caps;
use aal::modal::{
    complex_algebra, frame_properties, modal_condition_report, validate_modal, KripkeFrame,
};
use aal::poset::FinitePoset;

#[derive(Parser)]
#[command(
    name = "aal",
    version,
    about = "Finite-model workbench for lattices, deductive filters, and the algebras of a few well-known logics"
)]
struct Cli {
    /// Worker threads for sweeps (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semilattice identities, theorem conditions, enumeration.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Axiom validation, congruence lattices, Leibniz congruences.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Deductive filter lattices and the sequence checks on them.
    #[command(subcommand)]
    Filters(FiltersCmd),
    /// Up-set algebras and the KC/congruence bridge.
    #[command(subcommand)]
    Heyting(HeytingCmd),
    /// Kripke frames and their complex algebras.
    #[command(subcommand)]
    Modal(ModalCmd),
    /// The named De Morgan monoids and their check battery.
    #[command(subcommand)]
    Dmm(DmmCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Main,
    Eml,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Evaluate the star identities on one lattice given as a poset file.
    Check {
        /// Poset file; its order must be a lattice.
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        /// Properties to check (default: all six).
        #[arg(long = "which", value_name = "PROP")]
        which: Vec<String>,
    },
    /// Condition-agreement sweep over all lattices up to a size.
    Theorem {
        #[arg(long, value_enum, default_value_t = TheoremArg::Main)]
        which: TheoremArg,
        #[arg(long, default_value_t = 7, value_name = "N")]
        max_size: usize,
    },
    /// Count lattices per size up to isomorphism; sizes <= 6 are
    /// cross-validated against a brute-force labeled generator.
    Enumerate {
        #[arg(long, default_value_t = 7, value_name = "N")]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Check the axioms matching the algebra's signature.
    Validate {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        /// Builtin algebra name (B2, S3, C4, D4).
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
    },
    /// Congruence lattice, irreducibility class, greatest proper congruence.
    Congruences {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
    },
    /// Leibniz congruence of every deductive filter.
    Leibniz {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
        /// Filter system file (default: builtin for the signature).
        #[arg(long, value_name = "PATH")]
        system: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FiltersCmd {
    /// Filter lattice by subset closure, cross-checked against the
    /// principal-join construction.
    Lattice {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
        #[arg(long, value_name = "PATH")]
        system: Option<PathBuf>,
    },
    /// Verify an inconsistency-lemma sequence on the filter semilattice.
    IlVerify {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
        #[arg(long, value_name = "PATH")]
        system: Option<PathBuf>,
        /// Sequence file (default: the builtin for the system kind).
        #[arg(long, value_name = "PATH")]
        psi: Option<PathBuf>,
        #[arg(long, default_value_t = 2, value_name = "N")]
        nmax: usize,
    },
    /// Excluded-middle identities on the filter lattice.
    Weml {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
        #[arg(long, value_name = "PATH")]
        system: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HeytingCmd {
    /// The ¬v ∨ ¬¬v identity on an up-set algebra or algebra file.
    Kc {
        /// Poset file; the up-set algebra is built from it.
        #[arg(long, value_name = "PATH")]
        poset: Option<PathBuf>,
        /// Algebra file already in the Heyting signature.
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
    },
    /// KC next to greatest proper congruences across a sample
    /// (builtin sample plus any extra posets).
    Bridge {
        #[arg(long, value_name = "PATH")]
        poset: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ModalCmd {
    /// Stabilization, inconsistency and excluded-middle conditions on
    /// the complex algebras of a class of frames.
    Report {
        #[arg(long, required = true, value_name = "PATH")]
        frame: Vec<PathBuf>,
        #[arg(long, default_value_t = 2, value_name = "N")]
        nmax: usize,
    },
    /// Frame-level properties only.
    Frame {
        #[arg(long, value_name = "PATH")]
        frame: PathBuf,
    },
}

#[derive(Subcommand)]
enum DmmCmd {
    /// Axioms, table uniqueness, and optionally the sequence and
    /// excluded-middle flags.
    Verify {
        #[arg(long, value_name = "PATH")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        named: Option<String>,
        /// Also check the inconsistency-lemma flags.
        #[arg(long)]
        il: bool,
        /// Also check the excluded-middle flags.
        #[arg(long)]
        weml: bool,
        #[arg(long, default_value_t = 2, value_name = "N")]
        nmax: usize,
    },
    /// Print a builtin algebra in the algebra file format.
    Export {
        #[arg(long, value_name = "NAME")]
        named: String,
    },
}

/// CLI-side error: anything that should abort with exit code 2.
struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

fn usage(msg: &str) -> CliError {
    CliError(format!("usage: {msg}"))
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking
    // on the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("aal: {}", e.0);
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool, CliError> {
    let caps = Caps::from_env();
    match cmd {
        Command::Lattice(c) => run_lattice(c, &caps),
        Command::Algebra(c) => run_algebra(c, &caps),
        Command::Filters(c) => run_filters(c, &caps),
        Command::Heyting(c) => run_heyting(c, &caps),
        Command::Modal(c) => run_modal(c),
        Command::Dmm(c) => run_dmm(c, &caps),
    }
}

fn set_string(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn opt_bool(b: Option<bool>) -> String {
    match b {
        None => "-".to_string(),
        Some(v) => v.to_string(),
    }
}

/// Shared --algebra/--named resolution; exactly one must be given.
fn load_algebra_arg(
    algebra: &Option<PathBuf>,
    named: &Option<String>,
) -> Result<FiniteAlgebra, CliError> {
    match (algebra, named) {
        (Some(path), None) => Ok(files::load_algebra(path)?),
        (None, Some(name)) => {
            let which = NamedDmm::parse(name)
                .ok_or_else(|| usage("--named expects one of B2, S3, C4, D4"))?;
            Ok(named_dmm(which))
        }
        _ => Err(usage("give exactly one of --algebra and --named")),
    }
}

/// The builtin filter semantics matching the algebra's signature.
fn detect_system(a: &FiniteAlgebra) -> Option<FilterSystem> {
    let sig = a.signature();
    let has = |name: &str, arity: usize| sig.arity_of(name) == Some(arity);
    if has("fuse", 2) && has("meet", 2) && has("join", 2) && has("neg", 1) && has("e", 0) {
        Some(FilterSystem::Builtin(Builtin::Dmm))
    } else if has("arrow", 2) && has("meet", 2) && has("join", 2) && has("bot", 0) {
        Some(FilterSystem::Builtin(Builtin::Heyting))
    } else if has("box", 1) && has("meet", 2) && has("join", 2) && has("top", 0) {
        Some(FilterSystem::Builtin(Builtin::ModalGlobal))
    } else {
        None
    }
}

fn resolve_system(
    a: &FiniteAlgebra,
    system: &Option<PathBuf>,
) -> Result<FilterSystem, CliError> {
    match system {
        Some(path) => Ok(files::load_system(path, a.signature())?),
        None => detect_system(a).ok_or_else(|| {
            usage("no builtin filter semantics for this signature; supply --system")
        }),
    }
}

fn lattice_from_poset_file(path: &Path) -> Result<FiniteLattice, CliError> {
    let poset = files::load_poset(path)?;
    Ok(lattice_from_order(&poset)?)
}

fn run_lattice(cmd: LatticeCmd, caps: &Caps) -> Result<bool, CliError> {
    match cmd {
        LatticeCmd::Check { poset, which } => {
            let lat = lattice_from_poset_file(&poset)?;
            let props: Vec<SemilatticeProp> = if which.is_empty() {
                vec![
                    SemilatticeProp::Dpc,
                    SemilatticeProp::Frink,
                    SemilatticeProp::WemlId,
                    SemilatticeProp::EmlId,
                    SemilatticeProp::StarMeetZero,
                    SemilatticeProp::StarStarstarMeetZero,
                ]
            } else {
                which
                    .iter()
                    .map(|w| {
                        SemilatticeProp::parse(w)
                            .ok_or_else(|| usage(&format!("unknown property {w}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let mut all_pass = true;
            for prop in props {
                match lat.semilattice_property(prop) {
                    Ok(check) => {
                        if !check.holds {
                            all_pass = false;
                        }
                        println!(
                            "{}\t{}\t{}\t{}",
                            lat.poset().name(),
                            prop.name(),
                            check.holds,
                            check.witness_string()
                        );
                    }
                    Err(Error::RequiresDpc { witness }) => {
                        println!(
                            "{}\t{}\tn/a\tno-star:{}",
                            lat.poset().name(),
                            prop.name(),
                            witness
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(all_pass)
        }
        LatticeCmd::Theorem { which, max_size } => {
            let kind = match which {
                TheoremArg::Main => TheoremKind::Main,
                TheoremArg::Eml => TheoremKind::Eml,
            };
            let label = match kind {
                TheoremKind::Main => "main",
                TheoremKind::Eml => "eml",
            };
            let mut ok = true;
            for n in 1..=max_size {
                let lats = enumerate_lattices(n, max_size)?;
                let total = lats.len();
                let rows: Vec<(String, Option<aal::lattice::TheoremReport>)> = lats
                    .par_iter()
                    .map(|lat| {
                        let dpc = lat
                            .semilattice_property(SemilatticeProp::Dpc)
                            .expect("DPC check needs no star");
                        let report = if dpc.holds {
                            Some(
                                lat.theorem_conditions(kind)
                                    .expect("DPC was just established"),
                            )
                        } else {
                            None
                        };
                        (lat.poset().name().to_string(), report)
                    })
                    .collect();
                let dpc_count = rows.iter().filter(|(_, r)| r.is_some()).count();
                let mut agree = 0usize;
                let mut disagreements = Vec::new();
                for (tag, report) in &rows {
                    if let Some(r) = report {
                        if r.agreement {
                            agree += 1;
                        } else {
                            let conds: Vec<String> = r
                                .conditions
                                .iter()
                                .map(|(name, v)| format!("{name}={v}"))
                                .collect();
                            disagreements.push(format!(
                                "disagreement\t{tag}\t{}",
                                conds.join(",")
                            ));
                        }
                    }
                }
                println!(
                    "theorem\t{label}\tsize\t{n}\tlattices\t{total}\tdpc\t{dpc_count}\tagree\t{agree}\tdisagree\t{}",
                    disagreements.len()
                );
                for line in disagreements {
                    println!("{line}");
                    ok = false;
                }
            }
            Ok(ok)
        }
        LatticeCmd::Enumerate { max_size } => {
            let _ = caps;
            let mut ok = true;
            for n in 1..=max_size {
                let count = enumerate_lattices(n, max_size)?.len();
                if n <= 6 {
                    let brute = enumerate_lattices_brute(n)?.len();
                    let agree = brute == count;
                    if !agree {
                        ok = false;
                    }
                    println!("size\t{n}\tcount\t{count}\tbrute\t{brute}\tagree\t{agree}");
                } else {
                    println!("size\t{n}\tcount\t{count}\tbrute\t-\tagree\t-");
                }
            }
            Ok(ok)
        }
    }
}

fn print_axioms(name: &str, checks: &[aal::demorgan::AxiomCheck]) -> bool {
    let mut all = true;
    for c in checks {
        let witness = match &c.witness {
            None => "-".to_string(),
            Some(w) => set_string(w),
        };
        println!("axiom\t{name}\t{}\t{}\t{}", c.name, c.holds, witness);
        if !c.holds {
            all = false;
        }
    }
    all
}

fn run_algebra(cmd: AlgebraCmd, caps: &Caps) -> Result<bool, CliError> {
    match cmd {
        AlgebraCmd::Validate { algebra, named } => {
            let a = load_algebra_arg(&algebra, &named)?;
            let sig = a.signature();
            let checks = if sig.arity_of("fuse") == Some(2) {
                validate_dmm(&a)?.checks
            } else if sig.arity_of("arrow") == Some(2) {
                validate_heyting(&a)?
            } else if sig.arity_of("box") == Some(1) {
                validate_modal(&a)?
            } else {
                return Err(usage(
                    "no axiom battery for this signature (expected a fuse, arrow, or box symbol)",
                ));
            };
            Ok(print_axioms(a.name(), &checks))
        }
        AlgebraCmd::Congruences { algebra, named } => {
            let a = load_algebra_arg(&algebra, &named)?;
            let con = congruence_lattice(&a, caps)?;
            for (i, p) in con.congruences.iter().enumerate() {
                println!("congruence\t{i}\t{p}");
            }
            let class = classify_identity(&con);
            let greatest = match greatest_proper_congruence(&con) {
                None => "-".to_string(),
                Some(i) => con.congruences[i].to_string(),
            };
            println!("{}\t{}\t{}", a.name(), class.name(), greatest);
            Ok(true)
        }
        AlgebraCmd::Leibniz {
            algebra,
            named,
            system,
        } => {
            let a = load_algebra_arg(&algebra, &named)?;
            let sys = resolve_system(&a, &system)?;
            let fl = filter_lattice(&a, &sys, caps)?;
            for f in &fl.filters {
                let omega = leibniz_congruence(&a, f)?;
                let reduced = is_reduced_matrix(&a, f)?;
                println!(
                    "leibniz\t{}\t{}\t{}\t{}",
                    a.name(),
                    set_string(f),
                    omega,
                    reduced
                );
            }
            Ok(true)
        }
    }
}

fn run_filters(cmd: FiltersCmd, caps: &Caps) -> Result<bool, CliError> {
    match cmd {
        FiltersCmd::Lattice {
            algebra,
            named,
            system,
        } => {
            let a = load_algebra_arg(&algebra, &named)?;
            let sys = resolve_system(&a, &system)?;
            let subset = filter_lattice(&a, &sys, caps)?;
            let principal = filter_lattice_principal_join(&a, &sys, caps)?;
            let agreement = subset.filters == principal.filters;
            for (i, f) in subset.filters.iter().enumerate() {
                println!("filter\t{i}\t{}", set_string(f));
            }
            println!(
                "filters\t{}\tsystem\t{}\tcount\t{}\tagreement\t{}",
                a.name(),
                sys.name(),
                subset.filters.len(),
                agreement
            );
            Ok(agreement)
        }
        FiltersCmd::IlVerify {
            algebra,
            named,
            system,
            psi,
            nmax,
        } => {
            let a = load_algebra_arg(&algebra, &named)?;
            let sys = resolve_system(&a, &system)?;
            let seq = match &psi {
                Some(path) => files::load_psi(path, a.signature())?,
                None => match &sys {
                    FilterSystem::Builtin(Builtin::Dmm) => IlSequence::rt_builtin(),
                    FilterSystem::Builtin(Builtin::ModalGlobal) => IlSequence::s4_builtin(),
                    _ => {
                        return Err(usage(
                            "no builtin sequence for this system; supply --psi",
                        ))
                    }
                },
            };
            let verdict = verify_il_sequence(&a, &sys, &seq, nmax, caps)?;
            println!(
                "il-verify\t{}\tsystem\t{}\tpsi\t{}\tnmax\t{}\tok\t{}",
                a.name(),
                sys.name(),
                seq.name,
                nmax,
                verdict.ok
            );
            if let Some(fail) = &verdict.failure {
                let leg = match fail.leg {
                    IlLeg::StarMismatch => "star-mismatch",
                    IlLeg::InconsistencyMismatch => "inconsistency-mismatch",
                    IlLeg::NoStar => "no-star",
                };
                println!(
                    "witness\tn\t{}\ttuple\t{}\tleg\t{}\t{}",
                    fail.n,
                    set_string(&fail.tuple),
                    leg,
                    fail.detail
                );
            }
            Ok(verdict.ok)
        }
        FiltersCmd::Weml {
            algebra,
            named,
            system,
        } => {
            let a = load_algebra_arg(&algebra, &named)?;
            let sys = resolve_system(&a, &system)?;
            let rec = weml_eml_on_filters(&a, &sys, caps)?;
            println!(
                "weml\t{}\tsystem\t{}\tfilters\t{}",
                a.name(),
                sys.name(),
                rec.filter_count
            );
            println!("dpc\t{}\t{}", rec.dpc.holds, rec.dpc.witness_string());
            match &rec.weml_id {
                None => println!("weml_id\t-\t-"),
                Some(c) => println!("weml_id\t{}\t{}", c.holds, c.witness_string()),
            }
            match &rec.eml_id {
                None => println!("eml_id\t-\t-"),
                Some(c) => println!("eml_id\t{}\t{}", c.holds, c.witness_string()),
            }
            println!(
                "distributive\t{}\t{}",
                rec.distributive.holds,
                rec.distributive.witness_string()
            );
            Ok(true)
        }
    }
}

/// The default bridge sample: a point, the two-element chain, the
/// two-point antichain, and the three-point fork, all as up-set algebras.
fn builtin_bridge_posets() -> Vec<FinitePoset> {
    vec![
        FinitePoset::from_covers("point", 1, &[]).expect("valid covers"),
        FinitePoset::from_covers("two_chain", 2, &[(0, 1)]).expect("valid covers"),
        FinitePoset::from_covers("antichain2", 2, &[]).expect("valid covers"),
        FinitePoset::from_covers("fork", 3, &[(0, 1), (0, 2)]).expect("valid covers"),
    ]
}

fn run_heyting(cmd: HeytingCmd, caps: &Caps) -> Result<bool, CliError> {
    match cmd {
        HeytingCmd::Kc { poset, algebra } => {
            let a = match (&poset, &algebra) {
                (Some(path), None) => {
                    let p = files::load_poset(path)?;
                    upset_algebra(p.name(), &p)?
                }
                (None, Some(path)) => files::load_algebra(path)?,
                _ => return Err(usage("give exactly one of --poset and --algebra")),
            };
            let kc = kc_holds(&a)?;
            let witness = match kc.witness {
                None => "-".to_string(),
                Some((v, value)) => format!("v={v},value={value}"),
            };
            println!("kc\t{}\t{}\t{}", a.name(), kc.holds, witness);
            Ok(true)
        }
        HeytingCmd::Bridge { poset } => {
            let mut posets = builtin_bridge_posets();
            for path in &poset {
                posets.push(files::load_poset(path)?);
            }
            let algebras: Vec<FiniteAlgebra> = posets
                .iter()
                .map(|p| upset_algebra(p.name(), p))
                .collect::<Result<_, _>>()?;
            let report = kc_bridge_report(&algebras, caps)?;
            for row in &report.rows {
                println!(
                    "row\t{}\tkc\t{}\tsi\t{}\tunique_coatom\t{}\tgreatest_proper\t{}",
                    row.name,
                    row.kc,
                    row.si,
                    row.unique_coatom,
                    match row.greatest_proper {
                        None => "-".to_string(),
                        Some(i) => i.to_string(),
                    }
                );
            }
            println!(
                "bridge\tconsistent\t{}\tcoatom_crosscheck\t{}",
                report.consistent, report.coatom_crosscheck
            );
            Ok(report.consistent && report.coatom_crosscheck)
        }
    }
}

fn run_modal(cmd: ModalCmd) -> Result<bool, CliError> {
    match cmd {
        ModalCmd::Report { frame, nmax } => {
            let frames: Vec<KripkeFrame> = frame
                .iter()
                .map(files::load_frame)
                .collect::<Result<_, _>>()?;
            let algebras: Vec<FiniteAlgebra> = frames
                .iter()
                .map(complex_algebra)
                .collect::<Result<_, _>>()?;
            for fr in &frames {
                let props = frame_properties(fr);
                println!(
                    "frame\t{}\tpoints\t{}\treflexive\t{}\ttransitive\t{}\tup_directed\t{}",
                    fr.name(),
                    fr.points(),
                    props.reflexive,
                    props.transitive,
                    props.up_directed
                );
            }
            let refs: Vec<&FiniteAlgebra> = algebras.iter().collect();
            let report = modal_condition_report(&refs, nmax)?;
            println!("stabilization\t{}", report.stabilization);
            println!(
                "il_n\t{}",
                match report.il_n {
                    None => "-".to_string(),
                    Some(n) => n.to_string(),
                }
            );
            println!("weml\t{}", opt_bool(report.weml_at_n));
            println!("s4\t{}", report.s4);
            println!("convergence\t{}", report.convergence);
            println!("crosscheck\t{}", report.crosscheck);
            Ok(report.crosscheck)
        }
        ModalCmd::Frame { frame } => {
            let fr = files::load_frame(&frame)?;
            let props = frame_properties(&fr);
            let edges: Vec<String> = fr
                .edges()
                .iter()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect();
            println!(
                "frame\t{}\tpoints\t{}\tedges\t{}",
                fr.name(),
                fr.points(),
                edges.join(",")
            );
            println!(
                "reflexive\t{}\ntransitive\t{}\nup_directed\t{}",
                props.reflexive, props.transitive, props.up_directed
            );
            Ok(true)
        }
    }
}

fn run_dmm(cmd: DmmCmd, caps: &Caps) -> Result<bool, CliError> {
    match cmd {
        DmmCmd::Verify {
            algebra,
            named: named_arg,
            il,
            weml,
            nmax,
        } => {
            let a = load_algebra_arg(&algebra, &named_arg)?;
            let report = validate_dmm(&a)?;
            let mut ok = print_axioms(a.name(), &report.checks);
            if let Some(name) = &named_arg {
                let which = NamedDmm::parse(name).expect("validated by the loader");
                let count = named_solutions(which).len();
                let unique = count == 1;
                println!("uniqueness\t{}\tsolutions\t{}\t{}", a.name(), count, unique);
                ok &= unique;
            }
            if il || weml {
                let flags = rt_il_weml_check(&a, nmax, caps)?;
                if il {
                    println!("flag\til_ok\t{}", flags.il_ok);
                    println!("flag\tleast_is_fmeet\t{}", flags.least_is_fmeet);
                    ok &= flags.il_ok && flags.least_is_fmeet;
                }
                if weml {
                    println!("flag\tweml_id\t{}", flags.weml_id);
                    println!(
                        "flag\tgreatest_proper_when_fsi\t{}",
                        flags.greatest_proper_when_fsi
                    );
                    ok &= flags.weml_id && flags.greatest_proper_when_fsi;
                }
            }
            Ok(ok)
        }
        DmmCmd::Export { named } => {
            let which = NamedDmm::parse(&named)
                .ok_or_else(|| usage("--named expects one of B2, S3, C4, D4"))?;
            print!("{}", files::write_algebra(&named_dmm(which)));
            Ok(true)
        }
    }
}
