use alloc::vec::Vec;

use crate::{Error, Result};

/// Resizable, indexed population of solutions with cached objective values.
#[derive(Debug, Clone)]
pub struct SolutionMemory<S> {
    slots: Vec<Option<(S, f64)>>,
}

impl<S: Clone> SolutionMemory<S> {
    pub fn new(size: usize) -> Self {
        let mut slots = Vec::with_capacity(size);
        slots.resize_with(size, || None);
        Self { slots }
    }

    pub fn size(&self) -> usize {
        self.slots.len()
    }

    /// Resizes the memory, keeping the first `min(old, new)` slots.
    pub fn resize(&mut self, size: usize) {
        self.slots.resize_with(size, || None);
    }

    pub fn clear(&mut self) {
        self.slots.iter_mut().for_each(|s| *s = None);
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.slots.len() {
            Ok(())
        } else {
            Err(Error::SlotOutOfRange {
                index,
                size: self.slots.len(),
            })
        }
    }

    pub fn get(&self, index: usize) -> Result<(&S, f64)> {
        self.check_index(index)?;
        self.slots[index]
            .as_ref()
            .map(|(s, v)| (s, *v))
            .ok_or(Error::UninitializedSlot(index))
    }

    pub fn is_initialised(&self, index: usize) -> bool {
        matches!(self.slots.get(index), Some(Some(_)))
    }

    pub fn set(&mut self, index: usize, solution: S, value: f64) -> Result<()> {
        self.check_index(index)?;
        self.slots[index] = Some((solution, value));
        Ok(())
    }

    pub fn copy(&mut self, src: usize, dst: usize) -> Result<()> {
        self.check_index(dst)?;
        let entry = self.get(src).map(|(s, v)| (s.clone(), v))?;
        self.slots[dst] = Some(entry);
        Ok(())
    }
}
