//! Composite two-point Gauss–Legendre rule.
//!
//! Each of the `n` equal cells carries two nodes at `±1/√3` of its
//! half-width, so the rule is exact for cubics and converges as `O(n⁻⁴)`.

/// Nodes and weights of a composite rule on one interval.
#[derive(Debug, Clone)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    pub fn composite_gauss2(a: f64, b: f64, cells: usize) -> Self {
        let cells = cells.max(1);
        let width = (b - a) / cells as f64;
        let half = 0.5 * width;
        let offset = half / 3f64.sqrt();
        let mut nodes = Vec::with_capacity(2 * cells);
        let mut weights = Vec::with_capacity(2 * cells);
        for i in 0..cells {
            let mid = a + (i as f64 + 0.5) * width;
            nodes.push(mid - offset);
            nodes.push(mid + offset);
            weights.push(half);
            weights.push(half);
        }
        Rule1d { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        pairwise_sum(
            &self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * f(x))
                .collect::<Vec<_>>(),
        )
    }
}

/// Pairwise summation: deterministic order, `O(ε log n)` rounding growth.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_cubics() {
        let rule = Rule1d::composite_gauss2(-1.0, 2.0, 3);
        let v = rule.integrate(|x| x * x * x - 2.0 * x + 1.0);
        // ∫_{-1}^{2} = [x⁴/4 - x² + x] = (4 - 4 + 2) - (1/4 - 1 - 1)
        assert!((v - 3.75).abs() < 1e-14);
    }

    #[test]
    fn fourth_order_convergence() {
        let exact = 1.0 - f64::cos(1.0);
        let e1 = (Rule1d::composite_gauss2(0.0, 1.0, 4).integrate(f64::sin) - exact).abs();
        let e2 = (Rule1d::composite_gauss2(0.0, 1.0, 8).integrate(f64::sin) - exact).abs();
        let ratio = e1 / e2;
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }
}
