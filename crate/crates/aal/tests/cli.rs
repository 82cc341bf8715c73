//! Exit codes and golden report lines for the command-line binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn aal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 report")
}

#[test]
fn modal_report_on_the_fork_frame() {
    let out = aal(&["modal", "report", "--frame", &data("frames/fork.frame"), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "frame\tfork\tpoints\t3\treflexive\ttrue\ttransitive\ttrue\tup_directed\tfalse\n\
         stabilization\t1\n\
         il_n\t1\n\
         weml\tfalse\n\
         s4\ttrue\n\
         convergence\tfalse\n\
         crosscheck\ttrue\n"
    );
}

#[test]
fn modal_report_on_the_two_chain_frame() {
    let out = aal(&["modal", "report", "--frame", &data("frames/two_chain.frame"), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("il_n\t1\n"));
    assert!(text.contains("weml\ttrue\n"));
    assert!(text.contains("convergence\ttrue\n"));
    assert!(text.contains("crosscheck\ttrue\n"));
}

#[test]
fn theorem_sweep_summary_lines() {
    let out = aal(&["lattice", "theorem", "--which", "main", "--max-size", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "theorem\tmain\tsize\t1\tlattices\t1\tdpc\t1\tagree\t1\tdisagree\t0\n\
         theorem\tmain\tsize\t2\tlattices\t1\tdpc\t1\tagree\t1\tdisagree\t0\n\
         theorem\tmain\tsize\t3\tlattices\t1\tdpc\t1\tagree\t1\tdisagree\t0\n\
         theorem\tmain\tsize\t4\tlattices\t2\tdpc\t2\tagree\t2\tdisagree\t0\n\
         theorem\tmain\tsize\t5\tlattices\t5\tdpc\t4\tagree\t4\tdisagree\t0\n\
         theorem\tmain\tsize\t6\tlattices\t15\tdpc\t10\tagree\t10\tdisagree\t0\n"
    );
}

#[test]
fn dmm_verify_exit_codes() {
    let pass = aal(&["dmm", "verify", "--named", "C4", "--il", "--weml"]);
    assert_eq!(pass.status.code(), Some(0));
    let text = stdout_of(&pass);
    assert!(text.contains("flag\til_ok\ttrue"));
    assert!(text.contains("flag\tweml_id\ttrue"));

    let fail = aal(&["dmm", "verify", "--named", "S3", "--il"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout_of(&fail).contains("flag\til_ok\tfalse"));
}

#[test]
fn kc_failure_carries_a_witness() {
    let out = aal(&["heyting", "kc", "--poset", &data("posets/fork.poset")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "kc\tfork\tfalse\tv=1,value=3\n");
}

#[test]
fn pentagon_check_fails_with_witness() {
    let out = aal(&["lattice", "check", "--poset", &data("posets/pentagon.poset")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("pentagon\tWEML_ID\ttrue\t-\n"));
    assert!(text.contains("pentagon\tEML_ID\tfalse\t(1,2)\n"));
}

#[test]
fn filter_lattice_agreement_between_presentations() {
    let builtin = aal(&["filters", "lattice", "--named", "D4"]);
    let presented = aal(&[
        "filters",
        "lattice",
        "--named",
        "D4",
        "--system",
        &data("systems/rt_filters.system"),
    ]);
    assert_eq!(builtin.status.code(), Some(0));
    assert_eq!(presented.status.code(), Some(0));
    let filters_only = |text: &str| -> Vec<String> {
        text.lines()
            .filter(|l| l.starts_with("filter\t"))
            .map(String::from)
            .collect()
    };
    assert_eq!(
        filters_only(&stdout_of(&builtin)),
        filters_only(&stdout_of(&presented))
    );
}

#[test]
fn il_verify_uses_the_committed_sequence_file() {
    let out = aal(&[
        "filters",
        "il-verify",
        "--named",
        "C4",
        "--psi",
        &data("psi/rt.psi"),
        "--nmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "il-verify\tC4\tsystem\tdmm\tpsi\trt\tnmax\t2\tok\ttrue\n"
    );
}

#[test]
fn il_verify_failure_prints_witness() {
    let out = aal(&["filters", "il-verify", "--named", "S3", "--nmax", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("ok\tfalse"));
    assert!(text.contains("witness\t"));
}

#[test]
fn exported_algebra_round_trips_through_validate() {
    let exported = aal(&["dmm", "export", "--named", "B2"]);
    assert_eq!(exported.status.code(), Some(0));
    let committed =
        std::fs::read_to_string(data("dmm/b2.alg")).expect("golden file present");
    assert_eq!(stdout_of(&exported), committed);

    let validated = aal(&["algebra", "validate", "--algebra", &data("dmm/b2.alg")]);
    assert_eq!(validated.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let missing = aal(&["heyting", "kc", "--poset", "/nonexistent.poset"]);
    assert_eq!(missing.status.code(), Some(2));

    let unknown_prop = aal(&[
        "lattice",
        "check",
        "--poset",
        &data("posets/pentagon.poset"),
        "--which",
        "NOPE",
    ]);
    assert_eq!(unknown_prop.status.code(), Some(2));

    let not_a_lattice = aal(&["lattice", "check", "--poset", &data("posets/fork.poset")]);
    assert_eq!(not_a_lattice.status.code(), Some(2));

    let both_inputs = aal(&[
        "dmm",
        "verify",
        "--named",
        "C4",
        "--algebra",
        &data("dmm/c4.alg"),
    ]);
    assert_eq!(both_inputs.status.code(), Some(2));

    let unknown_sub = aal(&["bogus"]);
    assert_eq!(unknown_sub.status.code(), Some(2));
}

#[test]
fn universe_cap_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_aal"))
        .args(["algebra", "congruences", "--named", "C4"])
        .env("AAL_MAX_UNIVERSE", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).expect("utf-8 error");
    assert!(err.contains("AAL_MAX_UNIVERSE"), "stderr: {err}");
}

#[test]
fn jobs_flag_does_not_change_the_report() {
    let serial = aal(&["--jobs", "1", "lattice", "theorem", "--which", "eml", "--max-size", "6"]);
    let parallel = aal(&["--jobs", "4", "lattice", "theorem", "--which", "eml", "--max-size", "6"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(parallel.status.code(), Some(0));
    assert_eq!(stdout_of(&serial), stdout_of(&parallel));
}
