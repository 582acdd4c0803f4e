//! Reading and writing graph6 and edge lists.
//!
//! ```text
//! cargo run --example graph6_io
//! ```

use distcolour::graph::{gen_double_star, parse_edge_list, DoubleStarSpec};
use distcolour::graph6::{emit_graph6, parse_graph6};

fn main() -> distcolour::Result<()> {
    let ds = gen_double_star(DoubleStarSpec::new(3, 3)?);
    let text = emit_graph6(&ds)?;
    println!("DS(3,3) = {text}");
    assert_eq!(parse_graph6(&text)?, ds);

    let g = parse_edge_list("# a triangle with a tail\n0 1\n1 2\n2 0\n2 3\n")?;
    println!(
        "{} vertices, {} edges, graph6 {}",
        g.vertex_count(),
        g.edge_count(),
        emit_graph6(&g)?
    );
    print!("{}", g.to_edge_list());

    // Nonzero padding bits are rejected.
    println!("{:?}", parse_graph6("A`"));
    Ok(())
}
