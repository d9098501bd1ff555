use std::fmt::Write as _;

use super::AugmentationTrace;

/// Piecewise-linear minimum cost `x ↦ 𝒞(x)` over `[0, |f_max|]`.
///
/// Breakpoints are the flow values where the slope changes; the slope of a
/// segment is the length of the augmenting paths used across it.
#[derive(Debug, Clone, PartialEq)]
pub struct CostFunction {
    breakpoints: Vec<(f64, f64)>,
    slopes: Vec<f64>,
}

impl CostFunction {
    /// From `(slope, width)` segments in order. Adjacent segments with equal
    /// slope are merged.
    pub fn from_segments<I>(segments: I) -> CostFunction
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut x = 0.0;
        Self::build(segments.into_iter().map(|(slope, width)| {
            x += width;
            (slope, width, x)
        }))
    }

    fn build(segments: impl Iterator<Item = (f64, f64, f64)>) -> CostFunction {
        let mut breakpoints = vec![(0.0, 0.0)];
        let mut slopes: Vec<f64> = Vec::new();
        for (slope, width, x_end) in segments {
            let y = breakpoints.last().unwrap().1 + slope * width;
            if slopes.last() == Some(&slope) {
                *breakpoints.last_mut().unwrap() = (x_end, y);
            } else {
                slopes.push(slope);
                breakpoints.push((x_end, y));
            }
        }
        CostFunction { breakpoints, slopes }
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn max_value(&self) -> f64 {
        self.breakpoints.last().unwrap().0
    }

    /// `𝒞(x)`, or `None` outside `[0, |f_max|]`.
    pub fn eval(&self, x: f64) -> Option<f64> {
        if !(0.0..=self.max_value()).contains(&x) {
            return None;
        }
        let i = self.breakpoints.partition_point(|&(bx, _)| bx <= x);
        if i >= self.breakpoints.len() {
            return Some(self.breakpoints.last().unwrap().1);
        }
        let (x0, y0) = self.breakpoints[i - 1];
        Some(y0 + self.slopes[i - 1] * (x - x0))
    }

    /// Slopes are nondecreasing.
    pub fn is_convex(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] <= w[1])
    }

    /// Columns `x,y,slope_right`; the last breakpoint's right slope is `inf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,slope_right\n");
        for (i, (x, y)) in self.breakpoints.iter().enumerate() {
            let slope = self.slopes.get(i).copied().unwrap_or(f64::INFINITY);
            let _ = writeln!(out, "{x},{y},{slope}");
        }
        out
    }

    /// Plain gnuplot script plotting a CSV written by [`to_csv`](Self::to_csv).
    pub fn gnuplot_script(csv_path: &str) -> String {
        format!(
            "set datafile separator ','\nset xlabel 'flow value'\nset ylabel 'cost'\n\
             plot '{csv_path}' every ::1 using 1:2 with linespoints title 'C(x)'\n"
        )
    }
}

/// Cost function of the flows encountered in `trace`.
pub fn cost_function(trace: &AugmentationTrace) -> CostFunction {
    let mut prev = 0.0;
    CostFunction::build(trace.steps.iter().map(|s| {
        let width = s.value_after - prev;
        prev = s.value_after;
        (s.length, width, s.value_after)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_example_breakpoints() {
        let segments = [(4.0, 2.0), (6.0, 1.0), (7.0, 2.0), (8.0, 2.0), (9.0, 3.0), (12.0, 2.0)];
        let c = CostFunction::from_segments(segments);
        let xs: Vec<f64> = c.breakpoints().iter().map(|p| p.0).collect();
        let ys: Vec<f64> = c.breakpoints().iter().map(|p| p.1).collect();
        assert_eq!(xs, vec![0.0, 2.0, 3.0, 5.0, 7.0, 10.0, 12.0]);
        assert_eq!(ys, vec![0.0, 8.0, 14.0, 28.0, 44.0, 71.0, 95.0]);
        assert_eq!(c.slopes(), &[4.0, 6.0, 7.0, 8.0, 9.0, 12.0]);
        assert!(c.is_convex());
        assert_eq!(c.eval(4.0), Some(21.0));
        assert_eq!(c.eval(12.0), Some(95.0));
        assert_eq!(c.eval(12.5), None);
    }

    #[test]
    fn single_segment() {
        let c = CostFunction::from_segments([(0.5, 5.0)]);
        assert_eq!(c.breakpoints(), &[(0.0, 0.0), (5.0, 2.5)]);
        assert_eq!(c.slopes().len(), 1);
        assert_eq!(c.to_csv(), "x,y,slope_right\n0,0,0.5\n5,2.5,inf\n");
    }

    #[test]
    fn equal_slopes_merge() {
        let c = CostFunction::from_segments([(1.0, 1.0), (1.0, 2.0), (3.0, 1.0)]);
        assert_eq!(c.breakpoints(), &[(0.0, 0.0), (3.0, 3.0), (4.0, 6.0)]);
    }

    #[test]
    fn detects_non_convexity() {
        assert!(!CostFunction::from_segments([(2.0, 1.0), (1.0, 1.0)]).is_convex());
    }
}
