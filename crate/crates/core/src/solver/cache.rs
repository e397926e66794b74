//! Shared row cache and the binary spill format.
//!
//! Spill layout, all little-endian: `n: u64`, `alpha: f64`, `source: u64`,
//! `method: u64` (0 direct, 1 power, 2 montecarlo), `epsilon: f64`, then `n`
//! `f64` values.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::sync::{Arc, RwLock};

use super::{Method, PotentialRow};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowKey {
    pub graph: u64,
    pub alpha_bits: u64,
    pub node: usize,
    pub method: Method,
    pub epsilon_bits: u64,
}

impl RowKey {
    pub fn new(graph: u64, alpha: f64, node: usize, method: Method, epsilon: f64) -> Self {
        RowKey {
            graph,
            alpha_bits: alpha.to_bits(),
            node,
            method,
            epsilon_bits: epsilon.to_bits(),
        }
    }

    pub fn of(row: &PotentialRow) -> Self {
        Self::new(row.graph, row.alpha, row.source, row.method, row.epsilon)
    }
}

/// Thread-safe row cache with a fixed capacity in rows. Once full, new rows
/// are handed back but not stored.
#[derive(Debug)]
pub struct RowCache {
    capacity: usize,
    rows: RwLock<HashMap<RowKey, Arc<PotentialRow>>>,
}

impl RowCache {
    pub fn new(capacity: usize) -> Self {
        RowCache {
            capacity,
            rows: RwLock::new(HashMap::new()),
        }
    }

    /// Capacity fitting `bytes` of row storage for graphs with `n` nodes.
    pub fn with_memory(bytes: usize, n: usize) -> Self {
        Self::new(bytes / (8 * n.max(1)))
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("row cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &RowKey) -> Option<Arc<PotentialRow>> {
        self.rows
            .read()
            .expect("row cache poisoned")
            .get(key)
            .cloned()
    }

    pub fn insert(&self, row: PotentialRow) -> Arc<PotentialRow> {
        let key = RowKey::of(&row);
        let row = Arc::new(row);
        let mut map = self.rows.write().expect("row cache poisoned");
        if let Some(existing) = map.get(&key) {
            return existing.clone();
        }
        if map.len() < self.capacity {
            map.insert(key, row.clone());
        }
        row
    }

    /// Looks `key` up, computing and inserting it on a miss. Two threads
    /// missing on the same key may both compute; the first insert wins.
    pub fn get_or_try_insert<F>(&self, key: RowKey, compute: F) -> Result<Arc<PotentialRow>>
    where
        F: FnOnce() -> Result<PotentialRow>,
    {
        if let Some(row) = self.get(&key) {
            return Ok(row);
        }
        Ok(self.insert(compute()?))
    }
}

pub fn write_row<W: Write>(row: &PotentialRow, mut out: W) -> Result<()> {
    out.write_all(&(row.values.len() as u64).to_le_bytes())?;
    out.write_all(&row.alpha.to_le_bytes())?;
    out.write_all(&(row.source as u64).to_le_bytes())?;
    out.write_all(&row.method.code().to_le_bytes())?;
    out.write_all(&row.epsilon.to_le_bytes())?;
    for v in &row.values {
        out.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a spilled row. The graph fingerprint is not part of the file and
/// must be supplied by the caller.
pub fn read_row<R: Read>(mut input: R, graph: u64) -> Result<PotentialRow> {
    let mut word = [0u8; 8];
    let mut next = |input: &mut R| -> Result<[u8; 8]> {
        input.read_exact(&mut word)?;
        Ok(word)
    };
    let n = u64::from_le_bytes(next(&mut input)?) as usize;
    let alpha = f64::from_le_bytes(next(&mut input)?);
    let source = u64::from_le_bytes(next(&mut input)?) as usize;
    let code = u64::from_le_bytes(next(&mut input)?);
    let method = Method::from_code(code).ok_or_else(|| {
        Error::InvalidParameter(format!("unknown method code {code} in row file"))
    })?;
    let epsilon = f64::from_le_bytes(next(&mut input)?);
    if source >= n {
        return Err(Error::InvalidParameter(format!(
            "row file source {source} out of range for n = {n}"
        )));
    }
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        values.push(f64::from_le_bytes(next(&mut input)?));
    }
    Ok(PotentialRow {
        source,
        alpha,
        method,
        epsilon,
        values,
        tolerance: f64::NAN,
        graph,
    })
}
