//! Partitions of the primes into blocks, written as `finest`, `coarsest` or
//! explicit blocks followed by the residual block, e.g. `{2,3}|{5}|rest`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{GroupError, Result};

/// A partition of all primes. Only finitely many blocks are explicit; every
/// other prime lives in the residual block, or in its own singleton block for
/// the finest partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimePartition {
    Finest,
    /// Explicit blocks plus the residual block. No blocks means `coarsest`.
    Blocks(Vec<Vec<u64>>),
}

/// A block label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Explicit(usize),
    /// A singleton block of the finest partition.
    Prime(u64),
    Rest,
}

/// `σ(n)`: the blocks meeting `π(n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SigmaSignature(BTreeSet<Block>);

impl SigmaSignature {
    pub fn blocks(&self) -> impl Iterator<Item = Block> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, b: Block) -> bool {
        self.0.contains(&b)
    }

    pub fn is_disjoint(&self, other: &SigmaSignature) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &SigmaSignature) -> SigmaSignature {
        SigmaSignature(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &SigmaSignature) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl PrimePartition {
    pub fn finest() -> Self {
        PrimePartition::Finest
    }

    pub fn coarsest() -> Self {
        PrimePartition::Blocks(Vec::new())
    }

    /// Explicit blocks followed by the residual block.
    pub fn from_blocks(blocks: Vec<Vec<u64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut clean = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(GroupError::Parse("empty block".into()));
            }
            block.sort_unstable();
            for &p in &block {
                if !arith::is_prime(p) {
                    return Err(GroupError::Parse(format!("{p} is not a prime")));
                }
                if !seen.insert(p) {
                    return Err(GroupError::OverlappingBlocks { prime: p });
                }
            }
            clean.push(block);
        }
        Ok(PrimePartition::Blocks(clean))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "finest" => return Ok(PrimePartition::Finest),
            "coarsest" | "rest" => return Ok(PrimePartition::coarsest()),
            _ => {}
        }
        let parts: Vec<&str> = text.split('|').map(str::trim).collect();
        let (last, explicit) = parts.split_last().expect("split yields one part");
        if *last != "rest" {
            return Err(GroupError::Parse(format!(
                "partition {text:?} must end with |rest"
            )));
        }
        let blocks = explicit
            .iter()
            .map(|part| {
                let inner = part
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| GroupError::Parse(format!("expected {{..}} block, got {part:?}")))?;
                inner
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u64>()
                            .map_err(|_| GroupError::Parse(format!("bad prime {s:?} in {part:?}")))
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PrimePartition::from_blocks(blocks)
    }

    pub fn block_of(&self, p: u64) -> Block {
        match self {
            PrimePartition::Finest => Block::Prime(p),
            PrimePartition::Blocks(blocks) => blocks
                .iter()
                .position(|b| b.contains(&p))
                .map_or(Block::Rest, Block::Explicit),
        }
    }

    pub fn in_block(&self, p: u64, block: Block) -> bool {
        self.block_of(p) == block
    }

    pub fn sigma_of_int(&self, n: u64) -> SigmaSignature {
        SigmaSignature(
            arith::prime_divisors(n)
                .into_iter()
                .map(|p| self.block_of(p))
                .collect(),
        )
    }

    /// At most one block meets `π(n)`.
    pub fn is_primary_number(&self, n: u64) -> bool {
        self.sigma_of_int(n).len() <= 1
    }

    /// Every prime of `n` lies in `block`.
    pub fn is_block_number(&self, n: u64, block: Block) -> bool {
        arith::prime_divisors(n)
            .into_iter()
            .all(|p| self.in_block(p, block))
    }

    /// The `block`-part of `n`.
    pub fn block_part(&self, n: u64, block: Block) -> u64 {
        arith::part_where(n, |p| self.in_block(p, block))
    }

    /// The primes of `n` lying in `block`.
    pub fn primes_in_block(&self, n: u64, block: Block) -> Vec<u64> {
        arith::prime_divisors(n)
            .into_iter()
            .filter(|&p| self.in_block(p, block))
            .collect()
    }

    /// The partition of `π(n)` this partition induces, blocks in order of
    /// their smallest prime. Two partitions act identically on a group of
    /// order `n` iff these agree.
    pub fn restricted_to(&self, n: u64) -> Vec<Vec<u64>> {
        let mut blocks: Vec<Vec<u64>> = Vec::new();
        let mut labels: Vec<Block> = Vec::new();
        for p in arith::prime_divisors(n) {
            let b = self.block_of(p);
            match labels.iter().position(|&l| l == b) {
                Some(i) => blocks[i].push(p),
                None => {
                    labels.push(b);
                    blocks.push(vec![p]);
                }
            }
        }
        blocks
    }

    /// Human-readable name of a block, e.g. `{2,3}` or `rest`.
    pub fn block_name(&self, block: Block) -> String {
        match (self, block) {
            (_, Block::Prime(p)) => format!("{{{p}}}"),
            (PrimePartition::Blocks(blocks), Block::Explicit(i)) => render_block(&blocks[i]),
            (_, Block::Rest) => "rest".to_string(),
            (PrimePartition::Finest, Block::Explicit(i)) => format!("block{i}"),
        }
    }
}

fn render_block(primes: &[u64]) -> String {
    let body: Vec<String> = primes.iter().map(u64::to_string).collect();
    format!("{{{}}}", body.join(","))
}

impl fmt::Display for PrimePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimePartition::Finest => write!(f, "finest"),
            PrimePartition::Blocks(blocks) if blocks.is_empty() => write!(f, "coarsest"),
            PrimePartition::Blocks(blocks) => {
                for b in blocks {
                    write!(f, "{}|", render_block(b))?;
                }
                write!(f, "rest")
            }
        }
    }
}

impl FromStr for PrimePartition {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        PrimePartition::parse(s)
    }
}

impl Serialize for PrimePartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_renders() {
        let s = PrimePartition::parse("{7}|rest").unwrap();
        assert_eq!(s.to_string(), "{7}|rest");
        assert_eq!(s.block_of(7), Block::Explicit(0));
        assert_eq!(s.block_of(2), Block::Rest);
        let f = PrimePartition::parse("finest").unwrap();
        assert_eq!(f.block_of(5), Block::Prime(5));
        let t = PrimePartition::parse(" {3, 2} | {5} | rest ").unwrap();
        assert_eq!(t.to_string(), "{2,3}|{5}|rest");
        assert_eq!(PrimePartition::parse("coarsest").unwrap().to_string(), "coarsest");
    }

    #[test]
    fn rejects_bad_partitions() {
        assert_eq!(
            PrimePartition::parse("{2,3}|{3}|rest"),
            Err(GroupError::OverlappingBlocks { prime: 3 })
        );
        assert!(matches!(PrimePartition::parse("{2,3}"), Err(GroupError::Parse(_))));
        assert!(matches!(PrimePartition::parse("{4}|rest"), Err(GroupError::Parse(_))));
        assert!(matches!(PrimePartition::parse("{}|rest"), Err(GroupError::Parse(_))));
        assert!(matches!(PrimePartition::parse("nonsense"), Err(GroupError::Parse(_))));
    }

    #[test]
    fn signatures() {
        let s = PrimePartition::parse("{2,3}|{5}|rest").unwrap();
        let sig = s.sigma_of_int(45);
        assert_eq!(sig.blocks().collect::<Vec<_>>(), vec![Block::Explicit(0), Block::Explicit(1)]);
        assert!(s.sigma_of_int(1).is_empty());
        let seven = PrimePartition::parse("{7}|rest").unwrap();
        assert_eq!(
            seven.sigma_of_int(1260).blocks().collect::<Vec<_>>(),
            vec![Block::Explicit(0), Block::Rest]
        );
        assert_eq!(seven.restricted_to(1260), vec![vec![2, 3, 5], vec![7]]);
        assert_eq!(seven.block_part(1260, Block::Rest), 180);
    }

    proptest! {
        #[test]
        fn signature_of_product_is_union(m in 1u64..5000, n in 1u64..5000, which in 0usize..3) {
            let s = [
                PrimePartition::finest(),
                PrimePartition::coarsest(),
                PrimePartition::parse("{2,3}|{5,7}|rest").unwrap(),
            ][which].clone();
            prop_assert_eq!(s.sigma_of_int(m * n), s.sigma_of_int(m).union(&s.sigma_of_int(n)));
        }

        #[test]
        fn rendering_round_trips(blocks in proptest::sample::subsequence(vec![2u64, 3, 5, 7, 11, 13], 0..6), cut in 0usize..6) {
            let cut = cut.min(blocks.len());
            let (a, b) = blocks.split_at(cut);
            let parts: Vec<Vec<u64>> = [a.to_vec(), b.to_vec()].into_iter().filter(|v| !v.is_empty()).collect();
            let s = PrimePartition::from_blocks(parts).unwrap();
            prop_assert_eq!(PrimePartition::parse(&s.to_string()).unwrap(), s);
        }
    }
}
