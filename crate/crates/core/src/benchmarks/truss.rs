use std::f64::consts::SQRT_2;
use std::sync::Arc;

use crate::problem::{BiObjective, Bound, ProblemSpec};

/// Coefficients of the nine-bar truss objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct TrussConstants {
    /// Length factor of each bar in the material volume.
    pub a: [f64; 9],
    /// Compliance factor of each bar in the tip displacement.
    pub b: [f64; 9],
    /// Bar length `L`.
    pub length_scale: f64,
    /// Aggregate `F L / (9 E)`.
    pub load_modulus_scale: f64,
}

impl Default for TrussConstants {
    fn default() -> Self {
        Self {
            a: [1.0, 1.0, 1.0, SQRT_2, 1.0, SQRT_2, 1.0, SQRT_2, 1.0],
            b: [
                4.0,
                1.0,
                1.0,
                8.0 * SQRT_2,
                4.0,
                2.0 * SQRT_2,
                4.0,
                2.0 * SQRT_2,
                0.0,
            ],
            length_scale: 1.0,
            load_modulus_scale: 1.0,
        }
    }
}

/// `J1 = L sum a_i x_i`, `J2 = F L / (9 E) sum b_i / x_i`, with `x1..x3`
/// continuous and `x4..x9` from the realization.
#[derive(Debug, Clone)]
pub struct NineBarTruss {
    c: TrussConstants,
    // Bar indices grouped by equal coefficient, continuous bars first.
    a_groups: Vec<(f64, Vec<usize>)>,
    b_groups: Vec<(f64, Vec<usize>)>,
}

/// Groups `0..9` by coefficient value. Summing within a group before
/// scaling makes coefficient-symmetric bars give bitwise-identical results.
fn group(coef: &[f64; 9], range: std::ops::Range<usize>) -> Vec<(f64, Vec<usize>)> {
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for i in range {
        if coef[i] == 0.0 {
            continue;
        }
        match groups.iter_mut().find(|(c, _)| *c == coef[i]) {
            Some((_, idx)) => idx.push(i),
            None => groups.push((coef[i], vec![i])),
        }
    }
    groups
}

impl NineBarTruss {
    pub fn new(c: TrussConstants) -> Self {
        let mut a_groups = group(&c.a, 0..3);
        a_groups.extend(group(&c.a, 3..9));
        let mut b_groups = group(&c.b, 0..3);
        b_groups.extend(group(&c.b, 3..9));
        Self {
            c,
            a_groups,
            b_groups,
        }
    }

    pub fn constants(&self) -> &TrussConstants {
        &self.c
    }
}

impl BiObjective for NineBarTruss {
    fn objectives(&self, y: &[f64], z: &[f64]) -> [f64; 2] {
        let x = |i: usize| if i < 3 { y[i] } else { z[i - 3] };
        let volume: f64 = self
            .a_groups
            .iter()
            .map(|(c, idx)| c * idx.iter().map(|&i| x(i)).sum::<f64>())
            .sum();
        let compliance: f64 = self
            .b_groups
            .iter()
            .map(|(c, idx)| c * idx.iter().map(|&i| 1.0 / x(i)).sum::<f64>())
            .sum();
        [
            self.c.length_scale * volume,
            self.c.load_modulus_scale * compliance,
        ]
    }

    fn gradient(&self, y: &[f64], _z: &[f64], g1: &mut [f64], g2: &mut [f64]) -> bool {
        for i in 0..3 {
            g1[i] = self.c.length_scale * self.c.a[i];
            g2[i] = -self.c.load_modulus_scale * self.c.b[i] / (y[i] * y[i]);
        }
        true
    }
}

pub fn make_e2() -> ProblemSpec {
    make_e2_with(TrussConstants::default())
}

pub fn make_e2_with(constants: TrussConstants) -> ProblemSpec {
    let areas = vec![1.0, 5.0, 10.0, 15.0];
    ProblemSpec::new(
        "e2",
        vec![
            Bound::new(2.0 / 3.0, 10.0),
            Bound::new(1.0 / 3.0, 10.0),
            Bound::new(1.0 / 3.0, 10.0),
        ],
        vec![areas; 6],
        Arc::new(NineBarTruss::new(constants)),
    )
    .expect("e2 definition is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_areas_sum_coefficients() {
        let p = make_e2();
        let [j1, j2] = p.objectives(&[1.0; 3], &[1.0; 6]);
        assert!((j1 - (6.0 + 3.0 * SQRT_2)).abs() < 1e-12);
        assert!((j2 - (14.0 + 12.0 * SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn last_bar_does_not_affect_displacement() {
        let p = make_e2();
        let lo = p.objectives(&[2.0; 3], &[5.0, 5.0, 5.0, 5.0, 5.0, 1.0]);
        let hi = p.objectives(&[2.0; 3], &[5.0, 5.0, 5.0, 5.0, 5.0, 15.0]);
        assert_eq!(lo[1], hi[1]);
        assert_eq!(hi[0] - lo[0], 14.0);
    }

    #[test]
    fn symmetric_bars_tie_exactly() {
        let p = make_e2();
        let y = [0.7, 2.3, 4.1];
        // Swap x5 <-> x7 and x6 <-> x8.
        let a = p.objectives(&y, &[5.0, 1.0, 10.0, 15.0, 5.0, 1.0]);
        let b = p.objectives(&y, &[5.0, 15.0, 5.0, 1.0, 10.0, 1.0]);
        assert_eq!(a, b);
    }

    #[test]
    fn scales_multiply_objectives() {
        let c = TrussConstants {
            length_scale: 2.5,
            load_modulus_scale: 7.3,
            ..TrussConstants::default()
        };
        let y = [1.0, 2.0, 3.0];
        let z = [1.0, 5.0, 10.0, 15.0, 1.0, 5.0];
        let base = make_e2().objectives(&y, &z);
        let scaled = make_e2_with(c).objectives(&y, &z);
        assert!((scaled[0] - 2.5 * base[0]).abs() < 1e-12 * scaled[0]);
        assert!((scaled[1] - 7.3 * base[1]).abs() < 1e-12 * scaled[1]);
    }
}
