//! Refuting unprovable formulas: the molecule ceiling, its goodness, the
//! floor round trip, and the certificate.
//!
//!     cargo run --example refute -- "P -> P & P"

use cl2::completeness::{ceiling, floor, is_good, refute, MMode, Refutation};
use cl2::syntax::parse;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "P -> P & P".into());
    let f = parse(&text).unwrap();

    let (up, scheme) = ceiling(&f, MMode::PerAtom).unwrap();
    println!("formula  {f}");
    println!("ceiling  {up}");
    println!("good     {:?}", is_good(&up, &scheme));
    println!("floor    {}", floor(&up, &scheme));

    match refute(&f, MMode::PerAtom).unwrap() {
        Refutation::NotRefutable => println!("{f} is provable; nothing to refute"),
        Refutation::Certificate(c) => {
            println!("certificate holds: {}", c.holds());
            println!("{}", c.to_json());
        }
    }
}
