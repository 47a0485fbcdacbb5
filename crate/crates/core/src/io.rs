//! JSON and text formats for posets, digraphs, colorings and set
//! representations.
//!
//! Emitted JSON has sorted keys and sorted id lists, so equal values
//! serialize to identical bytes.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::{SetRepresentation, WalkColoring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::poset::Poset;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// `{"elements": [labels], "leq": [[x, y], ...]}`. On input `leq` may be any
/// generating relation; output lists the whole reflexive-transitive
/// relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            leq: p
                .relation_pairs()
                .into_iter()
                .map(|(x, y)| [x, y])
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[x, y]| (x, y)).collect();
        Poset::from_relation(self.elements.len(), &pairs)?.with_labels(self.elements.clone())
    }
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string(&PosetJson::from_poset(p)).expect("serializable")
}

pub fn poset_from_json(s: &str) -> Result<Poset> {
    serde_json::from_str::<PosetJson>(s)
        .map_err(parse_err)?
        .to_poset()
}

/// `{"edges": [[u, v], ...], "n": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub edges: Vec<[usize; 2]>,
    pub n: usize,
}

pub fn digraph_to_json(g: &Digraph) -> String {
    let j = DigraphJson {
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        n: g.n(),
    };
    serde_json::to_string(&j).expect("serializable")
}

pub fn digraph_from_json(s: &str) -> Result<Digraph> {
    let j: DigraphJson = serde_json::from_str(s).map_err(parse_err)?;
    let edges: Vec<(usize, usize)> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
    Digraph::new(j.n, &edges)
}

/// One `u v` pair per line; blank lines and `#` comments are skipped. The
/// vertex count is one more than the largest id mentioned.
pub fn digraph_from_edge_list(s: &str) -> Result<Digraph> {
    let mut edges = Vec::new();
    for (lineno, line) in s.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ids: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        let [u, v] = ids[..] else {
            return Err(Error::Parse(format!(
                "line {}: expected two vertex ids",
                lineno + 1
            )));
        };
        edges.push((u, v));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Digraph::new(n, &edges)
}

/// Reads a digraph from a `.json` file or, for any other extension, an edge
/// list.
pub fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = read_file(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        digraph_from_json(&text)
    } else {
        digraph_from_edge_list(&text)
    }
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    poset_from_json(&read_file(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorEntry {
    pub color: usize,
    pub walk: Vec<usize>,
}

/// The poset of a coloring: inline, or a path to a poset file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Inline(PosetJson),
    Path(String),
}

/// `{"colors": [{"color": x, "walk": [...]}, ...], "k": k, "poset": ...}`.
/// The digraph is supplied separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub colors: Vec<ColorEntry>,
    pub k: usize,
    pub poset: PosetRef,
}

pub fn coloring_to_json(c: &WalkColoring) -> String {
    serde_json::to_string(&ColoringJson::from_coloring(c)).expect("serializable")
}

impl ColoringJson {
    pub fn from_coloring(c: &WalkColoring) -> Self {
        ColoringJson {
            colors: c
                .entries()
                .into_iter()
                .map(|(walk, color)| ColorEntry { color, walk })
                .collect(),
            k: c.k(),
            poset: PosetRef::Inline(PosetJson::from_poset(c.poset())),
        }
    }
}

/// Parses a coloring of the walks of `g`. A poset given by path is resolved
/// relative to `base_dir`. Totality is not checked here.
pub fn coloring_from_json(
    s: &str,
    g: impl Into<Arc<Digraph>>,
    base_dir: &Path,
) -> Result<WalkColoring> {
    let j: ColoringJson = serde_json::from_str(s).map_err(parse_err)?;
    let poset = match &j.poset {
        PosetRef::Inline(p) => p.to_poset()?,
        PosetRef::Path(rel) => read_poset(&base_dir.join(rel))?,
    };
    let mut c = WalkColoring::new(g, poset, j.k);
    for e in &j.colors {
        c.set(&e.walk, e.color)?;
    }
    Ok(c)
}

pub fn read_coloring(path: &Path, g: impl Into<Arc<Digraph>>) -> Result<WalkColoring> {
    let dir = path.parent().unwrap_or(Path::new("."));
    coloring_from_json(&read_file(path)?, g, dir)
}

/// `{"ground": s, "sets": [[...], ...]}`, one set per poset element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
}

pub fn representation_to_json(r: &SetRepresentation) -> String {
    let j = RepresentationJson {
        ground: r.ground(),
        sets: (0..r.poset().len()).map(|x| r.set_of(x)).collect(),
    };
    serde_json::to_string(&j).expect("serializable")
}

pub fn representation_from_json(s: &str, p: impl Into<Arc<Poset>>) -> Result<SetRepresentation> {
    let j: RepresentationJson = serde_json::from_str(s).map_err(parse_err)?;
    SetRepresentation::new(p, j.ground, &j.sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_digraph, random_poset};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poset_round_trip_and_format() {
        let p = Poset::diamond();
        let s = poset_to_json(&p);
        assert!(s.starts_with(r#"{"elements":["0","a","b","1"],"leq":[[0,0],[0,1],"#));
        assert_eq!(poset_from_json(&s).unwrap(), p);
        // cover relations are closed on load
        let c = poset_from_json(r#"{"elements":["x","y","z"],"leq":[[0,1],[1,2]]}"#).unwrap();
        assert!(c.leq(0, 2));
        assert!(poset_from_json(r#"{"elements":["x","y"],"leq":[[0,1],[1,0]]}"#).is_err());
        assert!(matches!(poset_from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn digraph_formats() {
        let g = Digraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = digraph_to_json(&g);
        assert_eq!(s, r#"{"edges":[[0,1],[1,2]],"n":3}"#);
        assert_eq!(digraph_from_json(&s).unwrap(), g);
        let text = "# a path\n0 1\n\n1 2  # second edge\n";
        assert_eq!(digraph_from_edge_list(text).unwrap(), g);
        assert!(digraph_from_edge_list("0 1 2\n").is_err());
        assert!(digraph_from_edge_list("0 x\n").is_err());
        assert_eq!(digraph_from_edge_list("").unwrap(), Digraph::edgeless(0));
    }

    #[test]
    fn coloring_round_trip_with_poset_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("p.json"), poset_to_json(&Poset::trivial(2))).unwrap();
        let g = Arc::new(Digraph::directed_path(3));
        let text = r#"{"colors":[{"color":0,"walk":[0,1]},{"color":1,"walk":[1,2]}],"k":2,"poset":"p.json"}"#;
        let c = coloring_from_json(text, Arc::clone(&g), dir.path()).unwrap();
        assert_eq!(c.get(&[1, 2]), Some(1));
        let out = coloring_to_json(&c);
        assert_eq!(coloring_from_json(&out, g, dir.path()).unwrap(), c);
    }

    #[test]
    fn representation_round_trip() {
        let r = SetRepresentation::down_sets(Poset::diamond());
        let s = representation_to_json(&r);
        assert_eq!(s, r#"{"ground":4,"sets":[[0],[0,1],[0,2],[0,1,2,3]]}"#);
        let back = representation_from_json(&s, Poset::diamond()).unwrap();
        assert_eq!(representation_to_json(&back), s);
    }

    proptest! {
        #[test]
        fn emitters_round_trip(seed in any::<u64>(), n in 0usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_poset(n, 0.4, &mut rng);
            let s = poset_to_json(&p);
            let back = poset_from_json(&s).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(poset_to_json(&back), s);

            let g = random_digraph(n, 0.4, &mut rng);
            let s = digraph_to_json(&g);
            prop_assert_eq!(digraph_from_json(&s).unwrap(), g.clone());

            let q = Poset::trivial(3);
            let c = WalkColoring::from_fn(g.clone(), q, 2, |w| Ok((w[0] + w[1]) % 3)).unwrap();
            let s = coloring_to_json(&c);
            let back = coloring_from_json(&s, g, Path::new(".")).unwrap();
            prop_assert_eq!(coloring_to_json(&back), s);
            prop_assert_eq!(back, c);
        }
    }
}
