use std::collections::HashMap;
use std::ops::Range;

use crate::error::{Error, Result};

/// A named, contiguous group of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    name: String,
    vars: Vec<String>,
    offset: usize,
}

impl Block {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Flat indices covered by the block.
    pub fn range(&self) -> Range<usize> {
        self.offset..self.offset + self.vars.len()
    }
}

/// Ordered variable blocks plus an optional auxiliary block placed after all of them.
///
/// The flat variable index is the concatenation of the blocks in order, followed by
/// the auxiliary block.
#[derive(Clone, Debug)]
pub struct VariableLayout {
    blocks: Vec<Block>,
    aux: Option<Block>,
    names: HashMap<String, usize>,
}

impl PartialEq for VariableLayout {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks && self.aux == other.aux
    }
}

impl Eq for VariableLayout {}

impl VariableLayout {
    /// Builds a layout from `(block name, variable names)` pairs.
    pub fn new<S: Into<String>>(blocks: impl IntoIterator<Item = (S, Vec<String>)>) -> Result<Self> {
        let mut layout = VariableLayout { blocks: Vec::new(), aux: None, names: HashMap::new() };
        for (name, vars) in blocks {
            let block = layout.make_block(name.into(), vars)?;
            layout.blocks.push(block);
        }
        Ok(layout)
    }

    /// A single block called `main` holding the given variables.
    pub fn from_names(names: &[&str]) -> Result<Self> {
        Self::new([("main", names.iter().map(|s| s.to_string()).collect())])
    }

    /// Source variables `x_{f}_{j}` of a product of projective spaces of dimensions `dims`.
    pub fn source(dims: &[usize]) -> Self {
        Self::new(dims.iter().enumerate().map(|(f, &n)| {
            (format!("x_{f}"), (0..=n).map(|j| format!("x_{f}_{j}")).collect())
        }))
        .expect("generated names are unique")
    }

    /// Point variables `z_{i}_{f}_{j}` for `r` points of a product of projective spaces.
    pub fn configuration(r: usize, dims: &[usize]) -> Self {
        Self::new((0..r).flat_map(|i| {
            dims.iter().enumerate().map(move |(f, &n)| {
                (format!("z_{i}_{f}"), (0..=n).map(|j| format!("z_{i}_{f}_{j}")).collect())
            })
        }))
        .expect("generated names are unique")
    }

    /// Returns a copy with `count` auxiliary variables `t_0, ..` appended
    /// (the prefix is lengthened if those names are taken).
    pub fn with_aux(&self, count: usize) -> Self {
        let mut layout = self.clone();
        if let Some(aux) = layout.aux.take() {
            for v in aux.vars {
                layout.names.remove(&v);
            }
        }
        let mut prefix = String::from("t");
        while (0..count).any(|j| layout.names.contains_key(&format!("{prefix}_{j}"))) {
            prefix.push('t');
        }
        let vars: Vec<String> = (0..count).map(|j| format!("{prefix}_{j}")).collect();
        let block = layout.make_block("aux".into(), vars).expect("auxiliary names are reserved");
        layout.aux = Some(block);
        layout
    }

    /// The same layout without its auxiliary block.
    pub fn without_aux(&self) -> Self {
        let mut layout = self.clone();
        if let Some(aux) = layout.aux.take() {
            for v in aux.vars {
                layout.names.remove(&v);
            }
        }
        layout
    }

    fn make_block(&mut self, name: String, vars: Vec<String>) -> Result<Block> {
        if self.blocks.iter().any(|b| b.name == name) {
            return Err(Error::InvalidVariety(format!("duplicate block name `{name}`")));
        }
        let offset = self.nvars();
        for (k, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::parse(format!("invalid variable name `{v}`")));
            }
            if self.names.insert(v.clone(), offset + k).is_some() {
                return Err(Error::parse(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(Block { name, vars, offset })
    }

    /// Total number of variables including the auxiliary block.
    pub fn nvars(&self) -> usize {
        self.main_vars() + self.aux.as_ref().map_or(0, Block::len)
    }

    /// Number of variables outside the auxiliary block.
    pub fn main_vars(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.offset + b.len())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn aux(&self) -> Option<&Block> {
        self.aux.as_ref()
    }

    pub fn block(&self, name: &str) -> Result<&Block> {
        self.blocks
            .iter()
            .chain(self.aux.iter())
            .find(|b| b.name == name)
            .ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn var_name(&self, index: usize) -> &str {
        self.blocks
            .iter()
            .chain(self.aux.iter())
            .find(|b| b.range().contains(&index))
            .map(|b| b.vars[index - b.offset].as_str())
            .expect("variable index in range")
    }

    /// All variable names in flat order.
    pub fn var_names(&self) -> Vec<&str> {
        self.blocks.iter().chain(self.aux.iter()).flat_map(|b| b.vars.iter().map(String::as_str)).collect()
    }

    /// Degree of `exps` in every non-auxiliary block.
    pub fn multidegree(&self, exps: &[u16]) -> Vec<u32> {
        self.blocks.iter().map(|b| exps[b.range()].iter().map(|&e| e as u32).sum()).collect()
    }
}
