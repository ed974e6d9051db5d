//! End-to-end checks of the command surface: pinned output strings,
//! exit-code contract, determinism, and file-driven inputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wittforge"));
    cmd.env_remove("WITTFORGE_MAX_GROUP_ORDER");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wittforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let first = run(&["verify", "all"]);
    let second = run(&["verify", "all"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "verify all must be deterministic");

    let span_a = run(&["witt", "span", "--gen", "2:1/4", "--gen", "4:1/8"]);
    let span_b = run(&["witt", "span", "--gen", "2:1/4", "--gen", "4:1/8"]);
    assert_eq!(span_a.stdout, span_b.stdout, "span order must be deterministic");
}

#[test]
fn strict_mode_turns_skips_into_failure_exit() {
    let relaxed = run(&["verify", "all"]);
    assert_eq!(relaxed.status.code(), Some(0));
    let strict = run(&["verify", "all", "--strict"]);
    assert_eq!(
        strict.status.code(),
        Some(1),
        "shipped tables contain documented skips, so --strict must exit 1"
    );
}

#[test]
fn metric_outputs_are_pinned() {
    let charge = run(&["metric", "charge", "--group", "2", "--q", "1/4"]);
    assert!(charge.status.success());
    assert_eq!(stdout_of(&charge), "xi=0.707106781+0.707106781i, c=1\n");

    let reduce = run(&[
        "metric", "reduce", "--group", "2,2", "--q", "0,0", "--b", "1,2=1/2",
    ]);
    assert!(reduce.status.success());
    assert_eq!(stdout_of(&reduce), "trivial\n", "hyperbolic plane reduces away");

    let classify = run(&["metric", "classify", "--group", "5", "--q", "1/5"]);
    assert!(classify.status.success());
    let text = stdout_of(&classify);
    assert_eq!(
        text.lines().next(),
        Some("nondegenerate, anisotropic, c=0")
    );
    assert!(text.contains("group: Z/5"));

    let isometric = run(&["metric", "isometric", "--a", "5:1/5", "--b", "5:4/5"]);
    assert!(isometric.status.success());
    assert_eq!(stdout_of(&isometric), "isometric\n", "scaling by a square");

    let distinct = run(&["metric", "isometric", "--a", "5:1/5", "--b", "5:2/5"]);
    assert!(distinct.status.success());
    assert_eq!(stdout_of(&distinct), "not isometric\n");
}

#[test]
fn witt_outputs_are_pinned() {
    let order = run(&["witt", "order", "--group", "2", "--q", "1/4"]);
    assert_eq!(stdout_of(&order), "8\n");

    let eq = run(&["witt", "eq", "--a", "5:1/5", "--b", "5:2/5"]);
    assert_eq!(stdout_of(&eq), "distinct\n");

    let eq_same = run(&["witt", "eq", "--a", "5:1/5", "--b", "5:4/5"]);
    assert_eq!(stdout_of(&eq_same), "equal\n");

    let add = run(&["witt", "add", "--a", "2:1/4", "--b", "2:3/4"]);
    assert!(add.status.success());
    assert_eq!(
        stdout_of(&add),
        "trivial\n",
        "opposite classes cancel to the zero class"
    );
}

#[test]
fn affine_outputs_are_pinned() {
    let charge = run(&["affine", "charge", "A1:28"]);
    assert!(charge.status.success());
    assert_eq!(stdout_of(&charge), "14/5\n");

    let vir = run(&["affine", "charge", "Vir:m=2"]);
    assert_eq!(stdout_of(&vir), "7/10\n");

    let plus = run(&["affine", "charge", "sl2plus:3"]);
    assert_eq!(stdout_of(&plus), "14/5\n");

    let circle = run(&["affine", "charge", "u1:1"]);
    assert_eq!(stdout_of(&circle), "1\n");

    let ok = run(&["affine", "relation", "A1:6^2 * A1:2^-3"]);
    assert!(ok.status.success());
    assert_eq!(stdout_of(&ok), "0 mod 8 → OK\n");

    let conj = run(&["affine", "relation", "F4:6 * A2:2"]);
    assert!(conj.status.success());
    assert_eq!(stdout_of(&conj), "0 mod 8 → OK (conjectural)\n");

    let fail = run(&["affine", "relation", "A1:6 * A1:2^-1"]);
    assert_eq!(fail.status.code(), Some(1), "nonzero residue exits 1");
    let text = stdout_of(&fail);
    assert_eq!(text, "3/4 mod 8 → FAIL\n", "residue 9/4 - 3/2 reported exactly");

    let suite = run(&["affine", "sl2-suite"]);
    assert!(suite.status.success());
    let text = stdout_of(&suite);
    assert!(text.contains("# sl2 suite"));
    assert!(text.contains(" 0 failed, "));
}

#[test]
fn verify_range_restricts_families() {
    let out = run(&["verify", "embeddings", "--range", "1..5"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.contains("16 instantiation(s) verified, 9 skipped"),
        "5x5 grid minus trivial row and column: {text}"
    );

    let bad = run(&["verify", "embeddings", "--range", "five..ten"]);
    assert_eq!(bad.status.code(), Some(2), "malformed range is a usage error");
}

#[test]
fn verify_reads_user_files() {
    let good = temp_file("good_embeddings.txt", "A(1):10 <= B2:1\n");
    let out = run(&["verify", "embeddings", good.to_str().expect("utf-8")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("[OK]"));

    let missing = run(&["verify", "cosets", "/nonexistent/table.txt"]);
    assert_eq!(missing.status.code(), Some(2), "unreadable file is a usage error");

    let malformed = temp_file("malformed.txt", "A(1):10 <\n");
    let out = run(&["verify", "embeddings", malformed.to_str().expect("utf-8")]);
    assert_eq!(out.status.code(), Some(2), "parse failure is a usage error");
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("0001"),
        "parse errors carry the line number"
    );
}

#[test]
fn fpdim_outputs_are_pinned() {
    let fib = run(&["fpdim", "fib"]);
    assert!(fib.status.success());
    let text = stdout_of(&fib);
    assert_eq!(
        text.lines().next(),
        Some("tau: 1.618033989, total: 3.618033989")
    );
    assert!(text.lines().nth(1).unwrap_or("").starts_with("residual: "));

    let sl2 = run(&["fpdim", "sl2:2"]);
    assert!(stdout_of(&sl2).contains("total: 4.000000000"));

    let group = run(&["fpdim", "group:2,2"]);
    assert!(stdout_of(&group).contains("total: 4.000000000, all dims 1"));
}

#[test]
fn fpdim_reads_ring_files() {
    let golden = temp_file("golden.ring", "labels: 1 t\nt * t = 1 + t\n");
    let out = run(&["fpdim", golden.to_str().expect("utf-8")]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("t: 1.618033989"));

    // Parses but violates duality: `a x a` never contains the unit.
    let broken = temp_file("broken.ring", "labels: 1 a\na * a = 2*a\n");
    let out = run(&["fpdim", broken.to_str().expect("utf-8")]);
    assert_eq!(out.status.code(), Some(3), "axiom violation is a domain error");
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("fusion-ring axioms fail"),
        "domain error names the failing axiom"
    );

    let missing = run(&["fpdim", "/nonexistent/ring.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let unknown_flag = bin().args(["witt", "order", "--bogus"]).output().expect("runs");
    assert_eq!(unknown_flag.status.code(), Some(2), "unknown flag");

    let unknown_cmd = bin().arg("frobnicate").output().expect("runs");
    assert_eq!(unknown_cmd.status.code(), Some(2), "unknown subcommand");

    let bad_fraction = run(&["metric", "charge", "--group", "2", "--q", "x/y"]);
    assert_eq!(bad_fraction.status.code(), Some(2));

    let bad_symbol = run(&["affine", "charge", "H7:1"]);
    assert_eq!(bad_symbol.status.code(), Some(2));

    let help = bin().arg("--help").output().expect("runs");
    assert_eq!(help.status.code(), Some(0), "--help is not an error");
}

#[test]
fn enumeration_cap_is_honored() {
    let capped = bin()
        .env("WITTFORGE_MAX_GROUP_ORDER", "3")
        .args(["witt", "span", "--gen", "4:1/8"])
        .output()
        .expect("runs");
    assert_eq!(capped.status.code(), Some(3), "cap violations are domain errors");
    assert!(
        String::from_utf8_lossy(&capped.stderr).contains("WITTFORGE_MAX_GROUP_ORDER"),
        "error names the environment variable"
    );

    let nonsense = bin()
        .env("WITTFORGE_MAX_GROUP_ORDER", "zero")
        .args(["witt", "span", "--gen", "4:1/8"])
        .output()
        .expect("runs");
    assert_eq!(nonsense.status.code(), Some(2), "bad cap value is a usage error");

    let low = bin()
        .env("WITTFORGE_MAX_GROUP_ORDER", "10")
        .args(["fpdim", "group:4,4"])
        .output()
        .expect("runs");
    assert_eq!(low.status.code(), Some(3), "order 16 exceeds a cap of 10");

    let raised = bin()
        .env("WITTFORGE_MAX_GROUP_ORDER", "100")
        .args(["fpdim", "group:4,4"])
        .output()
        .expect("runs");
    assert!(raised.status.success(), "raising the cap unlocks larger groups");
    assert!(stdout_of(&raised).contains("all dims 1"));

    // Independently of the group-order cap, dense fusion tables are bounded.
    let huge = bin()
        .env("WITTFORGE_MAX_GROUP_ORDER", "1000000")
        .args(["fpdim", "group:64,64"])
        .output()
        .expect("runs");
    assert_eq!(huge.status.code(), Some(3), "table-size guard holds");
    assert!(
        String::from_utf8_lossy(&huge.stderr).contains("structure constants"),
        "error explains the dense-table limit"
    );

    let sl2_huge = run(&["fpdim", "sl2:500"]);
    assert_eq!(sl2_huge.status.code(), Some(3), "rank 501 exceeds the table cap");
}

#[test]
fn unsupported_symbols_are_domain_errors() {
    let trivial = run(&["affine", "charge", "su(1):1"]);
    assert_eq!(trivial.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&trivial.stderr).contains("unsupported"));

    let low = run(&["affine", "charge", "so(2):1"]);
    assert_eq!(low.status.code(), Some(3));

    let relation = run(&["affine", "relation", "D1:1 * A1:1^-1"]);
    assert_eq!(
        relation.status.code(),
        Some(3),
        "relations over unsupported factors cannot be decided"
    );
}
