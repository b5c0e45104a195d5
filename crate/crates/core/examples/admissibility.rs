//! The three admissibility conditions gating trivial extensions.

use ntrans::translation::{check_admissible, infer_translation};
use ntrans::{parse_quiver, GradedBasis};

fn main() -> ntrans::Result<()> {
    let cases = [
        ("a4rad2", "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n", 0),
        ("two components", "vertex 1 2 3 4\narrow a 1 2\narrow c 3 4\n", 1),
        ("single arrow", "vertex 1 2\narrow a 1 2\n", 0),
    ];
    for (name, text, n) in cases {
        let q = parse_quiver(text)?;
        let gb = GradedBasis::new(&q, 8);
        let ts = infer_translation(&gb, n)?;
        let report = check_admissible(&gb, &ts)?;
        println!("{name}: admissible = {}", report.verdict());
        for (label, c) in [("i", &report.extension), ("ii", &report.shiftable_span), ("iii", &report.stark)] {
            println!("  ({label}) {} {}", c.pass, c.witness.as_deref().unwrap_or(""));
        }
    }
    Ok(())
}
