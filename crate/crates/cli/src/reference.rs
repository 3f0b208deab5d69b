//! Published energies used for the `diagnostic` column of `table`.

pub const DELTAS: [f64; 4] = [0.05, 0.10, 0.15, 0.20];
pub const LABELS: [&str; 8] = ["1s", "2s", "2p", "3p", "3d", "4p", "4d", "4f"];

/// Published values, `None` for blank cells. Indexed `[delta][label]`.
pub const ENERGIES: [[Option<f64>; 8]; 4] = [
    [
        Some(-0.995440),
        Some(-0.989722),
        Some(-0.981633),
        Some(-0.971171),
        Some(-0.958218),
        Some(-0.958249),
        Some(-0.942728),
        Some(-0.924535),
    ],
    [
        Some(-0.983156),
        Some(-0.961884),
        Some(-0.930941),
        Some(-0.890279),
        Some(-0.837997),
        Some(-0.838488),
        Some(-0.772955),
        Some(-0.691402),
    ],
    [
        Some(-0.964688),
        Some(-0.919695),
        Some(-0.851356),
        Some(-0.759000),
        Some(-0.631085),
        Some(-0.633957),
        Some(-0.453749),
        Some(-0.158160),
    ],
    [
        Some(-0.941123),
        Some(-0.865398),
        Some(-0.743352),
        Some(-0.570175),
        Some(-0.381591),
        Some(-0.300651),
        None,
        None,
    ],
];

/// Agreement threshold: one unit in the sixth printed decimal plus rounding.
pub const MATCH_TOL: f64 = 1e-5;

/// Diagnostic for a computed cell against the published one.
pub fn diagnose(delta_index: usize, label_index: usize, energy: Option<f64>) -> String {
    match (ENERGIES[delta_index][label_index], energy) {
        (None, None) => "blank_in_reference".into(),
        (None, Some(_)) => "blank_in_reference:computed".into(),
        (Some(want), Some(got)) if (got - want).abs() <= MATCH_TOL => "match".into(),
        (Some(want), _) => format!("mismatch:ref={want:.6}"),
    }
}
