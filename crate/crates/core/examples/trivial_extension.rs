//! Trivial extensions: returning arrows b_i: i -> τi and the doubled dimension.

use ntrans::construct::{is_extendable, trivial_extension};
use ntrans::translation::infer_translation;
use ntrans::{parse_quiver, serialize_quiver, Error, GradedBasis};

fn main() -> ntrans::Result<()> {
    let a4 = parse_quiver("vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n")?;
    let gb = GradedBasis::new(&a4, 10);
    let ts = infer_translation(&gb, 0)?;
    let tilde = trivial_extension(&gb, &ts)?;
    print!("{}", serialize_quiver(&tilde));
    let tgb = GradedBasis::new(&tilde, 10);
    println!("dim {:?} -> {:?}", gb.total_dim(), tgb.total_dim());

    let ext = is_extendable(&gb, &ts, 10)?;
    println!("extendable: {} (p,q) = ({:?}, {:?})", ext.verdict, ext.tilde_p, ext.tilde_q);

    // iterate once more: the trivial extension of a stable quiver
    let tts = infer_translation(&tgb, 1)?;
    let twice = trivial_extension(&tgb, &tts)?;
    println!("second extension: {} arrows, {} relations", twice.arrow_count(), twice.relations().len());

    let edge = parse_quiver("vertex 1 2\narrow a 1 2\n")?;
    let egb = GradedBasis::new(&edge, 4);
    match trivial_extension(&egb, &infer_translation(&egb, 0)?) {
        Err(Error::NotAdmissible(why)) => println!("1 -> 2 refused: {why}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
