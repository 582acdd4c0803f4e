//! Irreducible colourings of double stars and double cliques, and the
//! transformations between them.
//!
//! ```text
//! cargo run --example double_star_lemma
//! ```

use distcolour::colouring::AnyColouring;
use distcolour::doublestar::{
    construct_from_injection, transform_a_to_b, transform_a_to_c, transform_c_to_d,
    verify_lemma_equivalence, InjectionWitness,
};
use distcolour::graph::DoubleStarSpec;

fn show(c: &AnyColouring) -> String {
    match c {
        AnyColouring::Vertex(c) => format!("{:?}", c.values()),
        AnyColouring::Edge(c) => c
            .iter()
            .map(|(e, k)| format!("{e}:{k}"))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn main() -> distcolour::Result<()> {
    let spec = DoubleStarSpec::new(2, 3)?;
    let f = InjectionWitness::new(spec, vec![0, 2])?;
    let a = construct_from_injection(spec, &f)?;
    println!("a: {}", show(a.payload()));

    for lc in [transform_a_to_b(&a)?, transform_a_to_c(&a)?] {
        println!(
            "{}: {} {:?}",
            lc.condition(),
            show(lc.payload()),
            lc.stamp().adjustments
        );
    }
    let d = transform_c_to_d(&transform_a_to_c(&a)?)?;
    println!("d: {} colours", d.stamp().colours_used);

    for (m, n) in [(1, 1), (2, 2), (3, 5)] {
        let spec = DoubleStarSpec::new(m, n)?;
        let report = verify_lemma_equivalence(spec, spec.vertex_count() <= 8)?;
        println!(
            "({m},{n}) all conditions witnessed: {}",
            report.witnessed.all()
        );
    }
    Ok(())
}
