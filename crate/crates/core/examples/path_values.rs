//! Prints c_g, c'_g, c*_g and b_g of short paths with solve times.

use std::time::Instant;

use cordiality::{game_number, GameNumber, Graph};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    println!("n\tc_g\tc'_g\tc*_g\tb_g\tsecs");
    for n in 1..=max_n {
        let g = Graph::path(n).unwrap();
        let t = Instant::now();
        let vals: Vec<i32> = GameNumber::ALL.iter().map(|&w| game_number(&g, w).unwrap()).collect();
        println!("{n}\t{}\t{}\t{}\t{}\t{:.2}", vals[0], vals[1], vals[2], vals[3], t.elapsed().as_secs_f64());
    }
}
