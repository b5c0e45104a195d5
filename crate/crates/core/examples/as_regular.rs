//! Partial Artin-Schelter regularity of the Koszul dual with its Gorenstein parameter.

use ntrans::hammock::partial_as_regular;
use ntrans::koszul::{classify_pq, koszul_spaces, n_translation_algebra};
use ntrans::translation::infer_translation;
use ntrans::{parse_quiver, GradedBasis};

fn main() -> ntrans::Result<()> {
    let cases = [
        ("a4rad2", "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n", 0),
        (
            "tilde-a4rad2",
            "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
             relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n",
            1,
        ),
    ];
    for (name, text, n) in cases {
        let q = parse_quiver(text)?;
        let gb = GradedBasis::new(&q, 10);
        let ts = infer_translation(&gb, n)?;
        let kr = classify_pq(&gb, &koszul_spaces(&gb)?);
        let nt = n_translation_algebra(&gb, &kr, n).verdict();
        let r = partial_as_regular(&gb, &ts, &kr, nt)?;
        println!("{name}: {}", serde_json::to_string(&r.to_json(&q)).expect("json"));
    }
    Ok(())
}
