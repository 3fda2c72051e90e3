//! The JSON document formats, driven through the command-line entry point
//! in process. Each invocation prints the same report the binary would.

use monodromy::cli::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("monodromy-documents-example");
    std::fs::create_dir_all(&dir)?;
    let fib = dir.join("fib2.json");
    std::fs::write(&fib, r#"{"space": "C1", "field": "F(2)", "rank": 2, "rep": {"a": [[0, 1], [1, 1]]}}"#)?;
    let cover = dir.join("z3.json");
    std::fs::write(&cover, r#"{"base": "C1", "mode": "onto-group", "group": {"cyclic": 3}, "rho": {"a": 1}}"#)?;
    let broken = dir.join("broken.json");
    std::fs::write(&broken, r#"{"vertices": ["p", "q"], "edges": [], "faces": [], "basepoint": "p"}"#)?;
    let (fib, cover, broken) = (fib.to_str().unwrap(), cover.to_str().unwrap(), broken.to_str().unwrap());

    let invocations: Vec<Vec<&str>> = vec![
        vec!["locsys", "monodromy", fib],
        vec!["cover", "exactseq", cover, fib],
        vec!["cover", "transport", cover, fib, "--element", "2"],
        vec!["descend", "survival", "--primes", "2", "--depth", "64", "--bound", "12", "--format", "rows"],
        vec!["cohom", "classes", "RP2rel", "--field", "F(3)"],
        vec!["space", "validate", broken],
    ];
    for args in invocations {
        let mut argv = vec!["monodromy"];
        argv.extend(&args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        println!("$ monodromy {}", args.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
        println!("(exit {code})\n");
    }
    Ok(())
}
