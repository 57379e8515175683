use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::EdgeId;
use crate::linalg::det_i64;

use super::quotient::QuotientAlgebra;

/// `matrix[i][j] = dim Hom(P(i), P(j))` with rows and columns in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    pub order: Vec<EdgeId>,
    pub matrix: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(order: Vec<EdgeId>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != order.len() || matrix.iter().any(|r| r.len() != order.len()) {
            return Err(Error::Internal("Cartan matrix is not square".into()));
        }
        Ok(CartanMatrix { order, matrix })
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn dim(&self) -> i64 {
        self.matrix.iter().flatten().sum()
    }

    pub fn det(&self) -> i128 {
        det_i64(&self.matrix)
    }

    pub fn entry(&self, i: &EdgeId, j: &EdgeId) -> Option<i64> {
        let a = self.order.iter().position(|v| v == i)?;
        let b = self.order.iter().position(|v| v == j)?;
        Some(self.matrix[a][b])
    }

    /// The same matrix with rows and columns listed in `order`.
    pub fn reordered(&self, order: &[EdgeId]) -> Result<CartanMatrix> {
        let idx = order
            .iter()
            .map(|v| {
                self.order
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Internal(format!("vertex {v} not in Cartan order")))
            })
            .collect::<Result<Vec<_>>>()?;
        if idx.len() != self.size() {
            return Err(Error::Internal("reordering is not a permutation".into()));
        }
        let matrix = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.matrix[i][j]).collect())
            .collect();
        CartanMatrix::new(order.to_vec(), matrix)
    }

    pub fn to_text(&self) -> String {
        let labels: Vec<&str> = self.order.iter().map(EdgeId::as_str).collect();
        let mut s = format!("order: {}\n", labels.join(" "));
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            s.push_str(&format!("  [{}]\n", cells.join(", ")));
        }
        s.push_str(&format!("dim: {}\ndet: {}\n", self.dim(), self.det()));
        s
    }
}

impl Serialize for CartanMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CartanMatrix", 4)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("det", &(self.det() as i64))?;
        st.end()
    }
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn cartan(&self) -> CartanMatrix {
        let n = self.vertex_count();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| self.block_dim(i, j) as i64).collect())
            .collect();
        CartanMatrix {
            order: self.presentation().quiver.vertices.clone(),
            matrix,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<EdgeId> {
        v.iter().map(|s| EdgeId::new(*s)).collect()
    }

    #[test]
    fn reorder_and_json() {
        let c = CartanMatrix::new(ids(&["1", "2", "3"]), vec![vec![4, 2, 0], vec![2, 2, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(c.dim(), 14);
        assert_eq!(c.det(), 4);
        let r = c.reordered(&ids(&["1", "3", "2"])).unwrap();
        assert_eq!(r.matrix, vec![vec![4, 0, 2], vec![0, 2, 1], vec![2, 1, 2]]);
        assert_eq!(r.det(), 4);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["dim"], 14);
        assert_eq!(json["det"], 4);
        assert_eq!(json["order"][2], "3");
        assert!(c.reordered(&ids(&["1", "2"])).is_err());
    }
}
