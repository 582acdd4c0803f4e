//! Search for symmetries that survive a colouring.
//!
//! ```text
//! cargo run --example automorphisms
//! ```

use distcolour::aut::{
    all_automorphisms_bruteforce, equitable_refinement, find_nontrivial_preserving, AutQuery,
    Constraint,
};
use distcolour::colouring::VertexColouring;
use distcolour::graph::{gen_double_star, gen_standard, DoubleStarSpec, Family};

fn main() -> distcolour::Result<()> {
    let c6 = gen_standard(Family::Cycle, 6)?;
    println!(
        "C6 has {} automorphisms",
        all_automorphisms_bruteforce(&c6)?.len()
    );

    for colours in [[0, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1], [0, 0, 1, 0, 1, 1]] {
        let c = VertexColouring::from_values(&colours);
        let q = AutQuery::new(&c6, Constraint::Vertex(&c))?;
        match find_nontrivial_preserving(&q) {
            Some(p) => println!("{colours:?} is preserved by {p}"),
            None => println!("{colours:?} is distinguishing"),
        }
    }

    // Refinement alone settles the colouring with a single red vertex on a path.
    let p5 = gen_standard(Family::Path, 5)?;
    let c = VertexColouring::from_values(&[1, 0, 0, 0, 0]);
    let cells = equitable_refinement(&AutQuery::new(&p5, Constraint::Vertex(&c))?);
    println!("P5 with one end marked refines to cells {cells:?}");

    // The kernel has no vertex limit.
    let big = gen_double_star(DoubleStarSpec::new(30, 30)?);
    let p =
        find_nontrivial_preserving(&AutQuery::unconstrained(&big)).expect("DS(30,30) is symmetric");
    println!(
        "DS(30,30) on {} vertices: swap found, 0 -> {}",
        big.vertex_count(),
        p.apply(0)
    );
    Ok(())
}
