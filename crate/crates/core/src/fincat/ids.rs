use std::fmt;

/// Index of an object inside one [`FinCat`](super::FinCat).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub(crate) u32);

/// Index of a morphism inside one [`FinCat`](super::FinCat).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub(crate) u32);

impl ObjId {
    pub fn new(index: usize) -> Self {
        ObjId(u32::try_from(index).expect("object index overflow"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn new(index: usize) -> Self {
        MorId(u32::try_from(index).expect("morphism index overflow"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ob#{}", self.0)
    }
}

impl fmt::Debug for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mor#{}", self.0)
    }
}
