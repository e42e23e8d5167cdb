//! Small fixed-order Gauss–Legendre kit shared by the quadrature-heavy
//! modules. Nodes/weights are for the reference interval [-1, 1].

/// 8-point rule: exact through polynomial degree 15.
pub(crate) const GL8: [(f64, f64); 8] = [
    (-0.9602898564975363, 0.1012285362903763),
    (-0.7966664774136267, 0.2223810344533745),
    (-0.5255324099163290, 0.3137066458778873),
    (-0.1834346424956498, 0.3626837833783620),
    (0.1834346424956498, 0.3626837833783620),
    (0.5255324099163290, 0.3137066458778873),
    (0.7966664774136267, 0.2223810344533745),
    (0.9602898564975363, 0.1012285362903763),
];

/// 16-point rule: exact through polynomial degree 31.
pub(crate) const GL16: [(f64, f64); 16] = [
    (-0.9894009349916499, 0.0271524594117541),
    (-0.9445750230732326, 0.0622535239386479),
    (-0.8656312023878318, 0.0951585116824928),
    (-0.7554044083550030, 0.1246289712555339),
    (-0.6178762444026438, 0.1495959888165767),
    (-0.4580167776572274, 0.1691565193950025),
    (-0.2816035507792589, 0.1826034150449236),
    (-0.0950125098376374, 0.1894506104550685),
    (0.0950125098376374, 0.1894506104550685),
    (0.2816035507792589, 0.1826034150449236),
    (0.4580167776572274, 0.1691565193950025),
    (0.6178762444026438, 0.1495959888165767),
    (0.7554044083550030, 0.1246289712555339),
    (0.8656312023878318, 0.0951585116824928),
    (0.9445750230732326, 0.0622535239386479),
    (0.9894009349916499, 0.0271524594117541),
];

/// Integrate `f` over [a, b] with a single Gauss-Legendre panel.
pub(crate) fn gl_panel<F: FnMut(f64) -> f64>(
    rule: &[(f64, f64)],
    a: f64,
    b: f64,
    mut f: F,
) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrate over panels whose endpoints are given by `breaks` (sorted).
pub(crate) fn gl_panels<F: FnMut(f64) -> f64>(rule: &[(f64, f64)], breaks: &[f64], f: &mut F) -> f64 {
    let mut acc = 0.0;
    for pair in breaks.windows(2) {
        if pair[1] > pair[0] {
            acc += gl_panel(rule, pair[0], pair[1], &mut *f);
        }
    }
    acc
}

/// Geometric panel edges from `a` down-refining towards `b` (b is the
/// singular/steep end): the panel adjacent to `b` has width `(b-a)*ratio^k`.
pub(crate) fn geometric_breaks_towards(a: f64, b: f64, levels: usize, ratio: f64) -> Vec<f64> {
    let mut breaks = Vec::with_capacity(levels + 2);
    breaks.push(a);
    let mut frac = 1.0;
    for _ in 0..levels {
        frac *= ratio;
        breaks.push(b - (b - a) * frac);
    }
    breaks.push(b);
    breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    breaks.dedup();
    breaks
}

/// Log-spaced panel edges on [a, b], a > 0.
pub(crate) fn log_breaks(a: f64, b: f64, panels: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a);
    let la = a.ln();
    let lb = b.ln();
    let mut v: Vec<f64> = (0..=panels)
        .map(|i| (la + (lb - la) * i as f64 / panels as f64).exp())
        .collect();
    v[0] = a;
    v[panels] = b;
    v
}
