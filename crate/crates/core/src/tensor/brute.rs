use super::TensorCircuit;
use crate::error::{Error, Result};
use crate::C64;

/// Default edge cap for the brute-force sum (`2^22` labelings).
pub const BRUTE_FORCE_EDGE_CAP: usize = 22;

/// Sum over every edge labeling of the product of vertex tensor entries.
pub fn value_brute_force(t: &TensorCircuit) -> Result<C64> {
    value_brute_force_capped(t, BRUTE_FORCE_EDGE_CAP)
}

pub fn value_brute_force_capped(t: &TensorCircuit, cap: usize) -> Result<C64> {
    let m = t.graph().num_edges();
    if m > cap.min(40) {
        return Err(Error::CapExceeded {
            what: "edges for brute-force value",
            got: m,
            cap,
        });
    }
    let mut total = C64::new(0.0, 0.0);
    for labeling in 0u64..1 << m {
        let mut product = C64::new(1.0, 0.0);
        for tensor in t.tensors() {
            let index = tensor
                .edges()
                .iter()
                .fold(0usize, |acc, &e| (acc << 1) | ((labeling >> e) & 1) as usize);
            product *= tensor.entries()[index];
            if product == C64::new(0.0, 0.0) {
                break;
            }
        }
        total += product;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::Tensor;
    use super::*;
    use crate::graph::CircuitGraph;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn single_edge_is_a_dot_product() {
        let (a, b) = ([c(0.5, 1.0), c(-2.0, 0.25)], [c(3.0, -1.0), c(0.5, 0.5)]);
        let g = CircuitGraph::new(2, vec![(0, 1)]).unwrap();
        let t = TensorCircuit::new(
            g,
            vec![Tensor::new(vec![0], a.to_vec()).unwrap(), Tensor::new(vec![0], b.to_vec()).unwrap()],
        )
        .unwrap();
        assert_eq!(value_brute_force(&t).unwrap(), a[0] * b[0] + a[1] * b[1]);
    }

    #[test]
    fn identity_triangle_counts_constant_labelings() {
        let g = CircuitGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let id = |e1, e2| {
            Tensor::new(vec![e1, e2], vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap()
        };
        let t = TensorCircuit::new(g, vec![id(0, 2), id(0, 1), id(1, 2)]).unwrap();
        assert_eq!(value_brute_force(&t).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn cap_is_enforced() {
        let g = CircuitGraph::new(2, vec![(0, 1); 5]).unwrap();
        let t = Tensor::new((0..5).collect(), vec![c(1.0, 0.0); 32]).unwrap();
        let tc = TensorCircuit::new(g, vec![t.clone(), t]).unwrap();
        assert!(value_brute_force_capped(&tc, 4).is_err());
        assert_eq!(value_brute_force_capped(&tc, 5).unwrap(), c(32.0, 0.0));
    }
}
