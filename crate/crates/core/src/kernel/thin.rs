use thiserror::Error;

use super::Obj;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThinError {
    #[error("order relation must be a {n}x{n} table")]
    Shape { n: usize },
    #[error("order relation is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
}

/// A finite preorder, viewed as a thin category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinPoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl ThinPoset {
    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Self {
        let n = labels.len();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Self { labels: labels.iter().map(|s| s.as_ref().to_string()).collect(), leq }
    }

    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, ThinError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(ThinError::Shape { n });
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(ThinError::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(ThinError::NotTransitive(labels[i].clone(), labels[j].clone(), labels[k].clone()));
                    }
                }
            }
        }
        Ok(Self { labels, leq })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: Obj, b: Obj) -> bool {
        self.leq.get(a).and_then(|row| row.get(b)).copied().unwrap_or(false)
    }

    pub fn label(&self, a: Obj) -> String {
        self.labels.get(a).cloned().unwrap_or_else(|| format!("?{a}"))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_order() {
        let c = ThinPoset::chain(&["0", "1/2", "1"]);
        assert!(c.leq(0, 2) && c.leq(1, 1) && !c.leq(2, 1));
    }

    #[test]
    fn validates_preorder() {
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let bad = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(matches!(ThinPoset::from_relation(labels.clone(), bad), Err(ThinError::NotTransitive(..))));
        let irreflexive = vec![vec![false; 3]; 3];
        assert!(matches!(ThinPoset::from_relation(labels, irreflexive), Err(ThinError::NotReflexive(_))));
    }
}
