//! Check colourings and build certificates for the verdicts.
//!
//! ```text
//! cargo run --example check_colouring
//! ```

use distcolour::cert::{distinguishing_certificate, recheck, Certificate};
use distcolour::colouring::{is_suitable, AnyColouring, EdgeColouring, Mode, VertexColouring};
use distcolour::graph::{gen_standard, Family};

fn main() -> distcolour::Result<()> {
    let c4 = gen_standard(Family::Cycle, 4)?;

    // Two adjacent reds: the reflection through them survives.
    let two = AnyColouring::Vertex(VertexColouring::from_values(&[0, 0, 1, 1]));
    let cert = distinguishing_certificate(&c4, &two, Mode::VERTEX)?;
    println!("[0,0,1,1] on C4: {}", cert.verdict);
    println!("{}", cert.to_json());

    let three = VertexColouring::from_values(&[0, 0, 1, 2]);
    println!(
        "[0,0,1,2] suitable: {}",
        is_suitable(&c4, &three, Mode::VERTEX)?
    );
    println!(
        "[0,0,1,2] proper and suitable: {}",
        is_suitable(&c4, &three, Mode::VERTEX_PROPER)?
    );

    // A lone edge cannot be edge-distinguished.
    let k2 = gen_standard(Family::Complete, 2)?;
    let edge = AnyColouring::Edge(EdgeColouring::all_distinct(&k2));
    let cert = distinguishing_certificate(&k2, &edge, Mode::EDGE)?;
    println!("K2 edge mode: {:?}, verdict {}", cert.kind, cert.verdict);

    // Certificates survive a round trip through JSON and recheck independently.
    let back = Certificate::from_json(&cert.to_json())?;
    recheck(&back)?;
    println!("recheck ok");
    Ok(())
}
