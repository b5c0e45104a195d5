//! Quadratic duals on the opposite quiver and the involution check.

use ntrans::dual::{check_double_dual, orthogonal_relations, quadratic_dual};
use ntrans::koszul::{classify_pq, koszul_spaces};
use ntrans::{parse_quiver, serialize_quiver, BoundQuiver, GradedBasis};

fn pq(q: &BoundQuiver) -> ntrans::Result<(Option<usize>, Option<usize>)> {
    let gb = GradedBasis::new(q, 10);
    let r = classify_pq(&gb, &koszul_spaces(&gb)?);
    Ok((r.p, r.q()))
}

fn main() -> ntrans::Result<()> {
    let a4 = parse_quiver("vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n")?;
    let d = quadratic_dual(&a4)?;
    print!("{}", serialize_quiver(&d));
    println!("double dual restores a4rad2: {}", check_double_dual(&a4)?);

    let tilde = parse_quiver(
        "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
         relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n",
    )?;
    for r in orthogonal_relations(&tilde)? {
        println!("  perp: {}", tilde.element_string(&r));
    }
    let td = quadratic_dual(&tilde)?;
    println!("tilde (p,q) = {:?}, dual (p,q) = {:?}", pq(&tilde)?, pq(&td)?);
    Ok(())
}
