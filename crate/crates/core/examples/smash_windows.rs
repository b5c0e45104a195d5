//! Smash-product quivers: finite windows of the ℤ-cover and the cyclic v-covers.

use ntrans::construct::{smash_extension, WindowSpec};
use ntrans::koszul::{classify_pq, koszul_spaces};
use ntrans::translation::{check_n_translation, infer_translation};
use ntrans::{parse_quiver, GradedBasis};

fn main() -> ntrans::Result<()> {
    let a4 = parse_quiver("vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n")?;
    let gb = GradedBasis::new(&a4, 10);
    let ts = infer_translation(&gb, 0)?;

    let window = smash_extension(&gb, &ts, WindowSpec::new(0, Some((1, 4)))?)?;
    println!(
        "window [1,4]: {} vertices, {} arrows, metadata {}",
        window.quiver.vertex_count(),
        window.quiver.arrow_count(),
        window.metadata()
    );

    for v in 1..=3 {
        let s = smash_extension(&gb, &ts, WindowSpec::new(v, None)?)?;
        let sgb = GradedBasis::new(&s.quiver, 10);
        let sts = infer_translation(&sgb, 1)?;
        let report = check_n_translation(&sgb, &sts);
        let r = classify_pq(&sgb, &koszul_spaces(&sgb)?);
        println!(
            "v={v}: {} vertices, {} arrows, stable {}, (p,q) = ({:?}, {:?})",
            s.quiver.vertex_count(),
            s.quiver.arrow_count(),
            report.stable,
            r.p,
            r.q()
        );
    }

    if let Err(e) = WindowSpec::new(0, None) {
        println!("v = 0 without a window: {e}");
    }
    Ok(())
}
