//! Finite 2-complexes: the built-in corpus, JSON documents, presentations
//! of the fundamental group and word normalization.

use monodromy::basespace::{builtin, builtin_names, loop_word, Presentation, TwoComplex};
use monodromy::Result;

fn main() -> Result<()> {
    for name in builtin_names() {
        let x = builtin(name)?;
        let p = Presentation::new(&x)?;
        println!("{name}: chi = {}, {}", x.euler_characteristic(), p.format(&x).replace('\n', "; "));
    }

    let square = TwoComplex::from_json(
        r#"{"vertices": ["a", "b", "c", "d"],
            "edges": [{"id": "ab", "src": "a", "dst": "b"}, {"id": "bc", "src": "b", "dst": "c"},
                      {"id": "cd", "src": "c", "dst": "d"}, {"id": "da", "src": "d", "dst": "a"}],
            "faces": [], "basepoint": "a"}"#,
    )?;
    let p = Presentation::new(&square)?;
    let path = square.parse_word("ab bc cd da")?;
    println!("square: {}", p.format(&square).replace('\n', "; "));
    println!("the boundary loop reads {}", square.format_word(&loop_word(&square, &path)?));

    let broken = TwoComplex::new(&["p", "q"], &[], &[], "p")?;
    println!("two points: {:?}", broken.validate());
    Ok(())
}
