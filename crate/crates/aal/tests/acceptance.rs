//! The ten suite-level checks, one test per criterion. Each prints a
//! single pass/fail line (visible with --nocapture) and fails the
//! test on any violation.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use aal::congruence::{
    classify_identity, congruence_lattice, greatest_proper_congruence, IdentityClass,
};
use aal::demorgan::{
    filter_congruence_iso_check, named, named_solutions, rt_il_weml_check, validate_dmm, NamedDmm,
};
use aal::enumerate::{enumerate_lattices, enumerate_lattices_brute};
use aal::files::load_system;
use aal::filters::{
    filter_lattice, filter_lattice_principal_join, weml_eml_on_filters, Builtin, FilterSystem,
};
use aal::heyting::{kc_holds, upset_algebra};
use aal::lattice::{FiniteLattice, SemilatticeProp, TheoremKind};
use aal::limits::Caps;
use aal::modal::{
    complex_algebra, modal_term, stabilization_index, valid_in_class, ClosureKind, KripkeFrame,
    ModalTermKind,
};
use aal::poset::FinitePoset;

fn verdict(k: usize, slug: &str, pass: bool) {
    println!("ACCEPTANCE {k} {slug}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion {k} ({slug}) failed");
}

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn dpc_lattices(max_size: usize) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        for lat in enumerate_lattices(n, max_size).unwrap() {
            if lat
                .semilattice_property(SemilatticeProp::Dpc)
                .unwrap()
                .holds
            {
                out.push(lat);
            }
        }
    }
    out
}

#[test]
fn acceptance_01_theorem_agreement() {
    for n in 1..=6 {
        let iso = enumerate_lattices(n, 7).unwrap().len();
        let brute = enumerate_lattices_brute(n).unwrap().len();
        assert_eq!(iso, brute, "enumeration mismatch at size {n}");
    }
    let mut disagreements = 0;
    for lat in dpc_lattices(7) {
        if !lat.theorem_conditions(TheoremKind::Main).unwrap().agreement {
            disagreements += 1;
        }
        if !lat.theorem_conditions(TheoremKind::Eml).unwrap().agreement {
            disagreements += 1;
        }
    }
    verdict(1, "theorem-agreement", disagreements == 0);
}

#[test]
fn acceptance_02_frink() {
    let pass = dpc_lattices(7).iter().all(|lat| {
        lat.semilattice_property(SemilatticeProp::Frink)
            .unwrap()
            .holds
    });
    verdict(2, "frink", pass);
}

#[test]
fn acceptance_03_distributive_upgrade() {
    let pass = dpc_lattices(7)
        .iter()
        .filter(|lat| lat.is_distributive().holds)
        .all(|lat| {
            let sz = lat
                .semilattice_property(SemilatticeProp::StarStarstarMeetZero)
                .unwrap()
                .holds;
            let weml = lat
                .semilattice_property(SemilatticeProp::WemlId)
                .unwrap()
                .holds;
            !sz || weml
        });
    verdict(3, "distributive-upgrade", pass);
}

#[test]
fn acceptance_04_named_dmm() {
    let caps = Caps::default();
    let mut pass = true;
    for which in NamedDmm::all() {
        pass &= named_solutions(which).len() == 1;
        let a = named(which);
        pass &= validate_dmm(&a).unwrap().all_pass();
        let trivial = a.has_trivial_subalgebra().unwrap().is_some();
        pass &= trivial == matches!(which, NamedDmm::S3);
        if matches!(which, NamedDmm::C4 | NamedDmm::D4) {
            pass &= congruence_lattice(&a, &caps).unwrap().congruences.len() == 2;
        }
    }
    verdict(4, "named-dmm", pass);
}

#[test]
fn acceptance_05_rt_il_weml() {
    let caps = Caps::default();
    let mut pass = true;
    for which in [NamedDmm::B2, NamedDmm::C4, NamedDmm::D4] {
        let a = named(which);
        let flags = rt_il_weml_check(&a, 2, &caps).unwrap();
        pass &= flags.all_pass();
    }
    verdict(5, "rt-il-weml", pass);
}

#[test]
fn acceptance_06_leibniz_isomorphism() {
    let caps = Caps::default();
    let pass = NamedDmm::all()
        .iter()
        .all(|&which| filter_congruence_iso_check(&named(which), &caps).unwrap());
    verdict(6, "leibniz-isomorphism", pass);
}

#[test]
fn acceptance_07_kc_bridge() {
    let caps = Caps::default();
    let fork = upset_algebra(
        "fork",
        &FinitePoset::from_covers("fork", 3, &[(0, 1), (0, 2)]).unwrap(),
    )
    .unwrap();
    let godel3 = upset_algebra(
        "godel3",
        &FinitePoset::from_covers("two_chain", 2, &[(0, 1)]).unwrap(),
    )
    .unwrap();
    let bool2 = upset_algebra("bool2", &FinitePoset::from_covers("point", 1, &[]).unwrap())
        .unwrap();
    let bool4 = upset_algebra(
        "bool4",
        &FinitePoset::from_covers("antichain2", 2, &[]).unwrap(),
    )
    .unwrap();

    let mut pass = true;

    let con = congruence_lattice(&fork, &caps).unwrap();
    let si = matches!(
        classify_identity(&con),
        IdentityClass::Rs | IdentityClass::Rsi
    );
    pass &= !kc_holds(&fork).unwrap().holds;
    pass &= si;
    pass &= greatest_proper_congruence(&con).is_none();

    for a in [&godel3, &bool2, &bool4] {
        pass &= kc_holds(a).unwrap().holds;
        let con = congruence_lattice(a, &caps).unwrap();
        let si = matches!(
            classify_identity(&con),
            IdentityClass::Rs | IdentityClass::Rsi
        );
        if si {
            pass &= greatest_proper_congruence(&con).is_some();
        }
    }

    let sys = FilterSystem::Builtin(Builtin::Heyting);
    for a in [&fork, &godel3, &bool2, &bool4] {
        let kc = kc_holds(a).unwrap().holds;
        let weml = weml_eml_on_filters(a, &sys, &caps)
            .unwrap()
            .weml_id
            .map(|c| c.holds)
            .unwrap_or(false);
        pass &= kc == weml;
    }
    verdict(7, "kc-bridge", pass);
}

/// Every reflexive-transitive frame on n labeled points.
fn preorder_frames(n: usize) -> Vec<KripkeFrame> {
    let offdiag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << offdiag.len() {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for (k, &e) in offdiag.iter().enumerate() {
            if mask >> k & 1 == 1 {
                edges.push(e);
            }
        }
        let fr = KripkeFrame::new(format!("pre{n}_{mask}"), n, &edges, ClosureKind::None)
            .unwrap();
        if fr.is_transitive() {
            out.push(fr);
        }
    }
    out
}

#[test]
fn acceptance_08_s4_bridge() {
    let caps = Caps::default();
    let mut pass = true;
    let mut seen = 0usize;
    for n in 1..=4 {
        for fr in preorder_frames(n) {
            seen += 1;
            let a = complex_algebra(&fr).unwrap();
            let alg = [&a];
            let convergence =
                valid_in_class(&alg, &modal_term(ModalTermKind::Convergence))
                    .unwrap()
                    .valid;
            pass &= convergence == fr.is_up_directed();
            let stab = stabilization_index(&a).unwrap();
            let weml = (0..=stab).all(|m| {
                valid_in_class(&alg, &modal_term(ModalTermKind::WemlCond(m, 1)))
                    .unwrap()
                    .valid
            });
            pass &= weml == convergence;
        }
    }
    // 1 + 4 + 29 + 355 labeled preorders on 1..=4 points
    pass &= seen == 389;

    let two_chain =
        KripkeFrame::new("two_chain", 2, &[(0, 1)], ClosureKind::Preorder).unwrap();
    let rec = weml_eml_on_filters(
        &complex_algebra(&two_chain).unwrap(),
        &FilterSystem::Builtin(Builtin::ModalGlobal),
        &caps,
    )
    .unwrap();
    pass &= rec.weml_id.map(|c| c.holds) == Some(true);
    pass &= rec.eml_id.map(|c| c.holds) == Some(false);
    verdict(8, "s4-bridge", pass);
}

#[test]
fn acceptance_09_filter_self_oracle() {
    let caps = Caps::default();
    let mut suite: Vec<(aal::algebra::FiniteAlgebra, FilterSystem)> = Vec::new();
    for which in NamedDmm::all() {
        suite.push((named(which), FilterSystem::Builtin(Builtin::Dmm)));
    }
    let posets = [
        FinitePoset::from_covers("point", 1, &[]).unwrap(),
        FinitePoset::from_covers("two_chain", 2, &[(0, 1)]).unwrap(),
        FinitePoset::from_covers("antichain2", 2, &[]).unwrap(),
        FinitePoset::from_covers("fork", 3, &[(0, 1), (0, 2)]).unwrap(),
    ];
    for p in &posets {
        suite.push((
            upset_algebra(p.name(), p).unwrap(),
            FilterSystem::Builtin(Builtin::Heyting),
        ));
    }
    for (pts, edges) in [(1usize, vec![]), (2usize, vec![(0, 1)])] {
        let fr = KripkeFrame::new(format!("pre{pts}"), pts, &edges, ClosureKind::Preorder)
            .unwrap();
        suite.push((
            complex_algebra(&fr).unwrap(),
            FilterSystem::Builtin(Builtin::ModalGlobal),
        ));
    }

    let mut pass = true;
    for (a, sys) in &suite {
        assert!(a.size() <= 6, "suite algebra {} too large", a.name());
        let subset = filter_lattice(a, sys, &caps).unwrap();
        let principal = filter_lattice_principal_join(a, sys, &caps).unwrap();
        pass &= subset.filters == principal.filters;
    }

    for which in NamedDmm::all() {
        let a = named(which);
        let presented = load_system(data("systems/rt_filters.system"), a.signature()).unwrap();
        let from_rules = filter_lattice(&a, &presented, &caps).unwrap();
        let from_builtin =
            filter_lattice(&a, &FilterSystem::Builtin(Builtin::Dmm), &caps).unwrap();
        pass &= from_rules.filters == from_builtin.filters;
    }
    verdict(9, "filter-self-oracle", pass);
}

#[test]
fn acceptance_10_determinism() {
    let battery: Vec<Vec<String>> = vec![
        vec!["lattice", "theorem", "--which", "main", "--max-size", "6"],
        vec!["lattice", "theorem", "--which", "eml", "--max-size", "6"],
        vec!["lattice", "enumerate", "--max-size", "6"],
        vec!["dmm", "verify", "--named", "C4", "--il", "--weml"],
        vec!["dmm", "verify", "--named", "D4", "--il", "--weml"],
        vec!["algebra", "congruences", "--named", "D4"],
        vec!["algebra", "leibniz", "--named", "C4"],
        vec!["heyting", "bridge"],
    ]
    .into_iter()
    .map(|args| args.into_iter().map(String::from).collect())
    .collect();
    let mut with_files: Vec<Vec<String>> = battery;
    for (args, file) in [
        (vec!["filters", "lattice", "--named", "C4", "--system"], "systems/rt_filters.system"),
        (vec!["filters", "il-verify", "--named", "B2", "--psi"], "psi/rt.psi"),
        (vec!["filters", "weml", "--algebra"], "dmm/c4.alg"),
        (vec!["modal", "report", "--nmax", "2", "--frame"], "frames/fork.frame"),
        (vec!["modal", "report", "--nmax", "2", "--frame"], "frames/two_chain.frame"),
        (vec!["heyting", "kc", "--poset"], "posets/fork.poset"),
        (vec!["lattice", "check", "--poset"], "posets/pentagon.poset"),
        (vec!["algebra", "validate", "--algebra"], "dmm/s3.alg"),
    ] {
        let mut full: Vec<String> = args.into_iter().map(String::from).collect();
        full.push(data(file).to_string_lossy().into_owned());
        with_files.push(full);
    }

    let run_suite = || -> Vec<(Vec<u8>, Option<i32>)> {
        with_files
            .iter()
            .map(|args| {
                let out = Command::new(env!("CARGO_BIN_EXE_aal"))
                    .args(args)
                    .output()
                    .expect("binary runs");
                (out.stdout, out.status.code())
            })
            .collect()
    };
    let first = run_suite();
    let second = run_suite();
    let nonempty = first.iter().all(|(stdout, _)| !stdout.is_empty());
    let distinct: BTreeSet<&Vec<u8>> = first.iter().map(|(s, _)| s).collect();
    verdict(
        10,
        "determinism",
        first == second && nonempty && distinct.len() > 1,
    );
}
