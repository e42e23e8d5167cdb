use fracwave::frac_time::*;
use std::time::Instant;

fn main() {
    for &(segs, grading, dens) in &[
        (8192usize, 4.0, DensityOrder::Quintic),
        (8192, 3.0, DensityOrder::Quintic),
        (4096, 4.0, DensityOrder::Quintic),
        (12288, 3.5, DensityOrder::Cubic),
    ] {
        let start = Instant::now();
        let mut worst_all = 0.0f64;
        let mut worst_at = (0.0, 0.0, 0, 0.0);
        for &horizon in &[1.0f64, 10.0] {
            for ai in 1..=9 {
                let alpha = ai as f64 / 10.0;
                let beta = WeightProfile::default_beta(alpha, 2.0);
                let prof = WeightProfile::new(horizon, beta).unwrap();
                let grid = TimeGrid::graded_right(horizon, segs, grading).unwrap();
                for m in 0..3u32 {
                    let ord = FracOrder::new(alpha, m).unwrap();
                    let f = SampledFn::from_fn(&grid, dens, |t| {
                        prof.derivative_signed(t, m).unwrap()
                    })
                    .unwrap();
                    for i in 1..=50 {
                        let t = horizon * (0.02 + 0.96 * (i - 1) as f64 / 49.0);
                        let num = rl_derivative_right(&f, alpha, t).unwrap();
                        let exact = prof.frac_derivative(t, ord).unwrap();
                        let rel = ((num - exact) / exact).abs();
                        if rel > worst_all {
                            worst_all = rel;
                            worst_at = (alpha, t / horizon, m, horizon);
                        }
                    }
                }
            }
        }
        println!(
            "segs={segs} grading={grading} dens={dens:?}: worst={worst_all:.3e} at (alpha={}, t/T={:.3}, m={}, T={}) elapsed={:?}",
            worst_at.0, worst_at.1, worst_at.2, worst_at.3,
            start.elapsed()
        );
    }
}
