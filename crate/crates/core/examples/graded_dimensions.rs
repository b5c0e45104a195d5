//! Parse a bound quiver, validate it and tabulate dim e_j Λ_t e_i.

use ntrans::{parse_quiver, validate, GradedBasis};

const A4RAD2: &str = "\
field rational
n 0
vertex 1 2 3 4
arrow a1 1 2
arrow a2 2 3
arrow a3 3 4
relation a2.a1
relation a3.a2
";

fn main() -> ntrans::Result<()> {
    let q = parse_quiver(A4RAD2)?;
    let issues = validate(&q);
    println!("{} vertices, {} arrows, {} issues", q.vertex_count(), q.arrow_count(), issues.len());

    let gb = GradedBasis::new(&q, 10);
    for t in 0..=gb.max_degree() {
        if gb.degree_dim(t) == 0 {
            continue;
        }
        for (i, j) in gb.components(t) {
            let basis: Vec<String> = gb.basis(t, i, j).iter().map(|p| q.path_string(p)).collect();
            println!("  t={t} {} -> {}: {}", q.vertex_name(i), q.vertex_name(j), basis.join(", "));
        }
    }
    println!("total dimension {:?}, loewy length {}", gb.total_dim(), gb.loewy_length());

    // the same quiver without relations grows one degree further
    let free = parse_quiver("vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\n")?;
    let fgb = GradedBasis::new(&free, 10);
    println!("relation-free: total dimension {:?}", fgb.total_dim());

    // an infinite algebra stops at the cap
    let loops = parse_quiver("vertex 1\narrow x 1 1\narrow y 1 1\nrelation x.y - y.x\n")?;
    let lgb = GradedBasis::new(&loops, 6);
    let dims: Vec<usize> = (0..=6).map(|t| lgb.degree_dim(t)).collect();
    println!("k[x,y] dims through degree 6: {dims:?}, loewy {}", lgb.loewy_length());
    Ok(())
}
