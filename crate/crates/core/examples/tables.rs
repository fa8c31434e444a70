use std::time::Instant;

use hardy_core::measure::measure_signs;
use hardy_core::ScanConfig;

fn main() {
    let cfg = ScanConfig::default();
    let rows: Vec<(f64, f64)> = std::env::args()
        .skip(1)
        .map(|a| {
            let mut it = a.split(':').map(|x| x.parse::<f64>().unwrap());
            let t = it.next().unwrap();
            (t, it.next().unwrap_or(t))
        })
        .collect();
    for (t, h) in rows {
        let start = Instant::now();
        match measure_signs(t, h, &cfg) {
            Ok(r) => println!(
                "T={t} H={h} ratio={:.6} zeros={} refinements={} ({:.2?})",
                r.ratio_plus,
                r.zero_count,
                r.grid_refinements,
                start.elapsed()
            ),
            Err(e) => println!("T={t} H={h} error: {e}"),
        }
    }
}
