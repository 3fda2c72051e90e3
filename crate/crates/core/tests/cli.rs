//! Golden-file tests for the command line. Each case runs in process and
//! compares exit code, stdout and stderr with `tests/golden/<name>.txt`.
//! Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::fs;
use std::path::Path;

use monodromy::cli::run;

const F: &str = "tests/fixtures";

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["monodromy".to_string()];
    argv.extend(args.iter().map(|a| a.replace("@", F)));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str], expected_code: i32) {
    let (code, out, err) = invoke(args);
    assert_eq!(code, expected_code, "{name}: stdout {out} stderr {err}");
    let again = invoke(args);
    assert_eq!(again, (code, out.clone(), err.clone()), "{name}: output is not deterministic");
    let text = format!("$ {}\nexit: {code}\n--- stdout\n{out}--- stderr\n{err}", args.join(" "));
    let path = Path::new("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &text).unwrap();
    } else {
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(text, want, "{name} differs from its golden file");
    }
}

#[test]
fn space_commands() {
    golden("space_validate_broken", &["space", "validate", "@/broken.json"], 1);
    golden("space_validate_triangle", &["space", "validate", "@/triangle.json"], 0);
    golden("space_present_c1", &["space", "present", "C1"], 0);
    golden("space_present_w2", &["space", "present", "W2"], 0);
    golden("space_present_t2rel", &["space", "present", "T2rel"], 0);
    golden("space_present_triangle", &["space", "present", "@/triangle.json"], 0);
}

#[test]
fn locsys_commands() {
    golden("locsys_check_third", &["locsys", "check", "@/third.json"], 0);
    golden("locsys_trivial_two", &["locsys", "trivial", "@/two_f5.json"], 0);
    golden("locsys_trivial_identity", &["locsys", "trivial", "@/identity2.json"], 0);
    golden("locsys_monodromy_fib2", &["locsys", "monodromy", "@/fib2.json"], 0);
    golden("locsys_monodromy_rot4", &["locsys", "monodromy", "@/rot4.json"], 0);
    golden("locsys_monodromy_unipotent", &["locsys", "monodromy", "@/unipotent.json"], 1);
    golden("locsys_iso_unipotents", &["locsys", "iso", "@/unipotent.json", "@/unipotent2.json"], 0);
    golden("locsys_iso_unipotent_identity", &["locsys", "iso", "@/unipotent.json", "@/identity2.json"], 0);
    golden("locsys_iso_rank_mismatch", &["locsys", "iso", "@/unipotent.json", "@/sixteen.json"], 0);
    golden("locsys_sections_unipotent", &["locsys", "sections", "@/unipotent.json"], 0);
    golden("locsys_sections_two", &["locsys", "sections", "@/two_f5.json"], 0);
}

#[test]
fn cover_commands() {
    golden("cover_build_z3", &["cover", "build", "@/z3.json"], 0);
    golden("cover_build_s3", &["cover", "build", "@/s3_w2.json"], 0);
    golden("cover_decompose_z3_zero", &["cover", "decompose", "@/z3_zero.json"], 0);
    golden("cover_decompose_swap", &["cover", "decompose", "@/swap_c1.json"], 0);
    golden("cover_pullback_z3", &["cover", "pullback", "@/z3.json", "@/cube_c1.json"], 0);
    golden("cover_pullback_z3_lift", &["cover", "pullback", "@/z3.json", "@/cube_c1.json", "--lift", "v0.1"], 0);
    golden("cover_pushforward_label", &["cover", "pushforward", "@/z2.json", "@/double_cover_label.json"], 0);
    golden("cover_pushforward_trivial", &["cover", "pushforward", "@/z2.json", "@/double_cover_trivial.json"], 0);
    golden("cover_transport_generator", &["cover", "transport", "@/z3.json", "@/perm3.json", "--element", "1"], 0);
    golden("cover_transport_identity", &["cover", "transport", "@/z3.json", "@/perm3.json", "--element", "0"], 0);
    golden("cover_transport_not_trivialized", &["cover", "transport", "@/z2.json", "@/perm3.json", "--element", "1"], 1);
    golden("cover_exactseq_z4", &["cover", "exactseq", "@/z4.json", "@/two_f5.json"], 0);
    golden("cover_exactseq_z2", &["cover", "exactseq", "@/z2.json", "@/two_f5.json"], 0);
}

#[test]
fn descend_commands() {
    golden("descend_field_omega", &["descend", "field", "@/triangle_f2.json", "@/omega_f4.json"], 0);
    golden("descend_modp_third", &["descend", "modp", "@/third.json", "--prime", "2"], 0);
    golden("descend_modp_bad_prime", &["descend", "modp", "@/third.json", "--prime", "3"], 1);
    golden("descend_modp_fibonacci", &["descend", "modp", "@/fib_q.json", "--prime", "2"], 0);
    golden("descend_level_sixteen", &["descend", "tower-level", "@/sixteen.json", "--tower", "@/dyadic.json", "--level", "4"], 0);
    golden("descend_level_three", &["descend", "tower-level", "@/three.json", "--primes", "2", "--depth", "8", "--level", "2"], 0);
    golden("descend_survival_dyadic", &["descend", "survival", "--primes", "2", "--depth", "64", "--bound", "20"], 0);
    golden(
        "descend_survival_full",
        &["descend", "survival", "--primes", "2,3,5,7,11,13,17,19", "--depth", "20", "--bound", "20", "--format", "rows"],
        0,
    );
    golden("descend_survival_empty", &["descend", "survival", "--depth", "10", "--bound", "6"], 0);
}

#[test]
fn cohom_commands() {
    golden("cohom_h1_w2_f3", &["cohom", "h1", "W2", "--field", "F(3)"], 0);
    golden("cohom_h1_t2rel", &["cohom", "h1", "T2rel"], 0);
    golden("cohom_h1_rp2_q", &["cohom", "h1", "RP2rel"], 0);
    golden("cohom_h1_rp2_f2", &["cohom", "h1", "RP2rel", "--field", "F(2)"], 0);
    golden("cohom_homga_rp2_f2", &["cohom", "homga", "RP2rel", "--field", "F(2)"], 0);
    golden("cohom_homga_t2rel", &["cohom", "homga", "T2rel"], 0);
    golden("cohom_classes_f2", &["cohom", "classes", "C1", "--field", "F(2)"], 0);
    golden("cohom_classes_f3", &["cohom", "classes", "C1", "--field", "F(3)"], 0);
    golden("cohom_classes_gl2_f2", &["cohom", "classes", "C1", "--field", "F(2)", "--rank", "2"], 0);
    golden("cohom_classes_cap", &["cohom", "classes", "W2", "--field", "F(3)", "--rank", "2", "--cap", "1000"], 1);
}

#[test]
fn demo_commands() {
    golden("demo_solenoid", &["demo", "solenoid"], 0);
    golden("demo_fibonacci", &["demo", "fibonacci"], 0);
    golden("demo_torus", &["demo", "torus"], 0);
}

#[test]
fn usage_errors_exit_two() {
    golden("usage_unknown_subcommand", &["space", "explode"], 2);
    golden("usage_missing_file", &["locsys", "check", "@/absent.json"], 2);
    golden("usage_bad_field_syntax", &["cohom", "h1", "C1", "--field", "G(6)"], 2);
    golden("domain_nonprime_field", &["cohom", "h1", "C1", "--field", "F(6)"], 1);
    golden("usage_bad_json", &["locsys", "check", "@/../cli.rs"], 2);
    golden("usage_classes_over_q", &["cohom", "classes", "C1"], 2);
}

#[test]
fn spot_checks() {
    let (code, out, _) = invoke(&["locsys", "monodromy", "@/fib2.json"]);
    assert_eq!(code, 0);
    assert!(out.contains("order 3"));
    let (_, out, _) = invoke(&["descend", "survival", "--primes", "2", "--depth", "64", "--bound", "20"]);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["12", "3"]));
    let (code, _, err) = invoke(&["space", "validate", "@/broken.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("Disconnected"));
}
