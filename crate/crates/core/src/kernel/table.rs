use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{Fault, Morphism, Obj, Payload};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("morphism #{id} has endpoint {obj} outside {count} objects")]
    BadEndpoint { id: usize, obj: Obj, count: usize },
    #[error("identity of object {obj} is #{id}, which is not an endomorphism of it")]
    BadIdentity { obj: Obj, id: usize },
    #[error("expected {expected} identities, found {found}")]
    IdentityCount { expected: usize, found: usize },
    #[error("composition entry #{g} ∘ #{f} = #{h} is ill-typed")]
    BadComposite { g: usize, f: usize, h: usize },
    #[error("duplicate composition entry for #{g} ∘ #{f}")]
    DuplicateComposite { g: usize, f: usize },
    #[error("morphism id #{0} out of range")]
    UnknownMorphism(usize),
}

/// A finite category given by explicit tables. Morphisms have global ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCat {
    labels: Vec<String>,
    morphisms: Vec<(Obj, Obj)>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    hom_index: BTreeMap<(Obj, Obj), Vec<usize>>,
}

impl TableCat {
    /// `compose` entries are `(g, f, g∘f)`.
    pub fn new(
        labels: Vec<String>,
        morphisms: Vec<(Obj, Obj)>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self, TableError> {
        let count = labels.len();
        for (id, &(d, c)) in morphisms.iter().enumerate() {
            for obj in [d, c] {
                if obj >= count {
                    return Err(TableError::BadEndpoint { id, obj, count });
                }
            }
        }
        if identities.len() != count {
            return Err(TableError::IdentityCount { expected: count, found: identities.len() });
        }
        for (obj, &id) in identities.iter().enumerate() {
            if morphisms.get(id) != Some(&(obj, obj)) {
                return Err(TableError::BadIdentity { obj, id });
            }
        }
        let mut table = HashMap::with_capacity(compose.len());
        for &(g, f, h) in compose {
            let get = |id: usize| morphisms.get(id).copied().ok_or(TableError::UnknownMorphism(id));
            let ((gd, gc), (fd, fc), (hd, hc)) = (get(g)?, get(f)?, get(h)?);
            if fc != gd || hd != fd || hc != gc {
                return Err(TableError::BadComposite { g, f, h });
            }
            if table.insert((g, f), h).is_some() {
                return Err(TableError::DuplicateComposite { g, f });
            }
        }
        let mut hom_index: BTreeMap<(Obj, Obj), Vec<usize>> = BTreeMap::new();
        for (id, &(d, c)) in morphisms.iter().enumerate() {
            hom_index.entry((d, c)).or_default().push(id);
        }
        Ok(Self { labels, morphisms, identities, compose: table, hom_index })
    }

    pub fn object_count(&self) -> usize {
        self.labels.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn label(&self, a: Obj) -> String {
        self.labels.get(a).cloned().unwrap_or_else(|| format!("?{a}"))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn endpoints(&self) -> &[(Obj, Obj)] {
        &self.morphisms
    }

    pub fn identity_ids(&self) -> &[usize] {
        &self.identities
    }

    /// Composition entries sorted by `(g, f)`.
    pub fn composition_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.compose.iter().map(|(&(g, f), &h)| (g, f, h)).collect();
        v.sort_unstable();
        v
    }

    pub fn morphism(&self, id: usize) -> Morphism {
        let (dom, cod) = self.morphisms[id];
        Morphism { dom, cod, payload: Payload::Table(id) }
    }

    pub fn try_morphism(&self, id: usize) -> Result<Morphism, Fault> {
        if id < self.morphisms.len() {
            Ok(self.morphism(id))
        } else {
            Err(Fault::IllTyped(format!("morphism #{id} out of range")))
        }
    }

    pub fn hom_ids(&self, a: Obj, b: Obj) -> &[usize] {
        self.hom_index.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn identity(&self, a: Obj) -> Result<Morphism, Fault> {
        self.identities.get(a).map(|&id| self.morphism(id)).ok_or_else(|| Fault::Undefined(format!("object {a}")))
    }

    pub fn compose(&self, g: usize, f: usize) -> Result<Morphism, Fault> {
        self.compose
            .get(&(g, f))
            .map(|&h| self.morphism(h))
            .ok_or_else(|| Fault::IllTyped(format!("composition table has no entry for #{g} ∘ #{f}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_object_category() {
        let t = TableCat::new(vec!["*".into()], vec![(0, 0)], vec![0], &[(0, 0, 0)]).unwrap();
        assert_eq!(t.compose(0, 0).unwrap().payload, Payload::Table(0));
        assert_eq!(t.hom_ids(0, 0), &[0]);
    }

    #[test]
    fn rejects_ill_typed_entries() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let mors = vec![(0, 0), (1, 1), (0, 1)];
        let err = TableCat::new(labels.clone(), mors.clone(), vec![0, 1], &[(2, 1, 2)]).unwrap_err();
        assert_eq!(err, TableError::BadComposite { g: 2, f: 1, h: 2 });
        let err = TableCat::new(labels, mors, vec![0, 2], &[]).unwrap_err();
        assert_eq!(err, TableError::BadIdentity { obj: 1, id: 2 });
    }
}
