//! Merge colour classes until no merge keeps the colouring suitable.
//!
//! ```text
//! cargo run --example reduce_colouring
//! ```

use distcolour::colouring::{used_colours, EdgeColouring, Mode, VertexColouring};
use distcolour::graph::{gen_double_clique, gen_standard, DoubleStarSpec, Family};
use distcolour::reduction::{merge_table, reduce_to_irreducible};

fn main() -> distcolour::Result<()> {
    let c6 = gen_standard(Family::Cycle, 6)?;
    let trace = reduce_to_irreducible(&c6, &VertexColouring::all_distinct(6), Mode::VERTEX)?;
    for step in &trace.steps {
        println!("merge {} into {}", step.from, step.into);
    }
    println!("final {:?}", trace.final_colouring.values());
    trace.verify(&c6)?;

    // Every remaining merge fails.
    for check in merge_table(&c6, &trace.final_colouring, Mode::VERTEX)? {
        println!("{check:?}");
    }

    let dc = gen_double_clique(DoubleStarSpec::new(2, 3)?);
    let trace = reduce_to_irreducible(
        &dc,
        &VertexColouring::all_distinct(dc.vertex_count()),
        Mode::VERTEX_PROPER,
    )?;
    println!(
        "DC(2,3) proper: {} colours after {} merges",
        used_colours(&trace.final_colouring).len(),
        trace.steps.len()
    );

    let p4 = gen_standard(Family::Path, 4)?;
    let trace = reduce_to_irreducible(&p4, &EdgeColouring::all_distinct(&p4), Mode::EDGE)?;
    println!(
        "P4 edges: {} colours",
        used_colours(&trace.final_colouring).len()
    );
    Ok(())
}
