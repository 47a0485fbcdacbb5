//! Deterministic coin tossing on a directed path, simulated round by round.
//!
//! Node `i` points to node `i + 1`. Every round computes all new colors
//! from the previous round's colors only.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{verify_coloring, Verdict, WalkColoring};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Domain size at which the bit-compression step stops shrinking.
pub const SMALL_DOMAIN: u64 = 6;

fn ceil_log2(d: u64) -> u64 {
    if d <= 1 {
        0
    } else {
        u64::from(u64::BITS - (d - 1).leading_zeros())
    }
}

/// Colors of the nodes of a path after some number of rounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListState {
    colors: Vec<u64>,
    round: usize,
    domain_size: u64,
}

impl ListState {
    /// Fails unless neighbors differ and every color is below
    /// `domain_size`.
    pub fn new(colors: Vec<u64>, domain_size: u64) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= domain_size) {
            return Err(Error::PreconditionFailed(format!(
                "color {c} outside domain of size {domain_size}"
            )));
        }
        if let Some(i) = colors.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::NotProperColoring(i, i + 1));
        }
        Ok(ListState {
            colors,
            round: 0,
            domain_size,
        })
    }

    /// Unique colors: a seeded random permutation of `0..n`.
    pub fn random_permutation(n: usize, seed: u64) -> Self {
        let mut colors: Vec<u64> = (0..n as u64).collect();
        colors.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        ListState {
            colors,
            round: 0,
            domain_size: n as u64,
        }
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn domain_size(&self) -> u64 {
        self.domain_size
    }

    /// Neighbors differ and colors fit the domain.
    pub fn is_proper(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] != w[1])
            && self.colors.iter().all(|&c| c < self.domain_size)
    }

    /// One compression round. Each node but the last finds the lowest bit
    /// `b` where its color differs from its successor's and takes color
    /// `2b + (its bit b)`. The last node takes the smaller of 0 and 1 that
    /// differs from its predecessor's new color. The domain becomes
    /// `2 * max(ceil(log2 D), 1)`.
    pub fn cv_step(&self) -> ListState {
        let n = self.colors.len();
        let mut next = Vec::with_capacity(n);
        for w in self.colors.windows(2) {
            let b = u64::from((w[0] ^ w[1]).trailing_zeros());
            next.push(2 * b + ((w[0] >> b) & 1));
        }
        if n > 0 {
            let last = match next.last() {
                Some(&0) => 1,
                _ => 0,
            };
            next.push(last);
        }
        let state = ListState {
            colors: next,
            round: self.round + 1,
            domain_size: 2 * ceil_log2(self.domain_size).max(1),
        };
        debug_assert!(state.is_proper(), "compression produced a collision");
        state
    }

    /// Compresses until the domain is at most [`SMALL_DOMAIN`]; returns the
    /// state and the number of rounds.
    pub fn run_to_small(&self) -> (ListState, usize) {
        let mut s = self.clone();
        let mut rounds = 0;
        while s.domain_size > SMALL_DOMAIN {
            s = s.cv_step();
            rounds += 1;
        }
        (s, rounds)
    }

    /// From at most six colors to three: colors 5, 4 and 3 are eliminated in
    /// turn, each such node taking the least of 0, 1, 2 unused by its
    /// neighbors. Nodes of one color are never adjacent, so each pass is a
    /// single synchronous round.
    pub fn reduce_to_three(&self) -> Result<ListState> {
        if self.domain_size > SMALL_DOMAIN {
            return Err(Error::PreconditionFailed(format!(
                "domain {} is larger than {SMALL_DOMAIN}",
                self.domain_size
            )));
        }
        let mut colors = self.colors.clone();
        let mut round = self.round;
        for gone in (3..SMALL_DOMAIN).rev() {
            if !colors.contains(&gone) {
                continue;
            }
            let prev = colors.clone();
            for (i, c) in colors.iter_mut().enumerate() {
                if *c == gone {
                    let left = i.checked_sub(1).map(|j| prev[j]);
                    let right = prev.get(i + 1).copied();
                    *c = (0..3)
                        .find(|&x| Some(x) != left && Some(x) != right)
                        .expect("two neighbors leave a color free");
                }
            }
            round += 1;
        }
        Ok(ListState {
            colors,
            round,
            domain_size: self.domain_size.min(3),
        })
    }

    /// Nodes whose color is below both neighbors' (the first and last node
    /// compare with their one neighbor). On a proper 3-coloring these are
    /// independent and at most 4 apart.
    pub fn ruling_set(&self) -> Result<Vec<usize>> {
        if self.domain_size > 3 || !self.is_proper() {
            return Err(Error::PreconditionFailed(
                "ruling set needs a proper 3-coloring".into(),
            ));
        }
        let c = &self.colors;
        Ok((0..c.len())
            .filter(|&i| (i == 0 || c[i] < c[i - 1]) && (i + 1 == c.len() || c[i] < c[i + 1]))
            .collect())
    }
}

/// Number of times `log2` must be applied to bring `n` to at most 2.
pub fn log_star(n: u64) -> usize {
    let mut x = n as f64;
    let mut count = 0;
    while x > 2.0 {
        x = x.log2();
        count += 1;
    }
    count
}

/// The color of the first node after `steps` rounds depends only on the
/// initial colors of the first `steps + 1` nodes. Read as a function of
/// those colors, it colors the (steps+1)-walks of the complete symmetric
/// digraph on the `n` initial colors. Returns that coloring (into the
/// trivial order on the final domain) and its verdict, which is always
/// valid: the first two nodes of any longer path end up different.
pub fn composed_walk_coloring(
    n: usize,
    steps: usize,
    max_walks: u128,
) -> Result<(WalkColoring, Verdict)> {
    let k = steps + 1;
    let g = Digraph::complete_symmetric(n);
    if g.count_walks(k) > max_walks {
        return Err(Error::SizeLimitExceeded {
            what: "number of walks",
            limit: max_walks,
        });
    }
    let mut domain = n as u64;
    for _ in 0..steps {
        domain = 2 * ceil_log2(domain).max(1);
    }
    let c = WalkColoring::from_fn(g, Poset::trivial(domain as usize), k, |w| {
        let mut s = ListState::new(w.iter().map(|&v| v as u64).collect(), n as u64)?;
        for _ in 0..steps {
            s = s.cv_step();
        }
        Ok(s.colors[0] as usize)
    })?;
    let verdict = verify_coloring(&c)?;
    Ok((c, verdict))
}
