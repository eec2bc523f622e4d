//! Optional interval variables with start, end and length windows.

use crate::ids::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presence {
    Present,
    Absent,
    Undecided,
}

/// Domain of one optional interval decision variable. Window values are
/// conditional on presence: an absent variable imposes nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalVar {
    pub presence: Presence,
    /// Start window [est, lst].
    pub est: Time,
    pub lst: Time,
    /// End window [eet, let].
    pub eet: Time,
    pub let_: Time,
    /// Length window [min_len, max_len].
    pub min_len: Time,
    pub max_len: Time,
}

impl IntervalVar {
    pub fn new(horizon: Time, min_len: Time, max_len: Time) -> Self {
        IntervalVar {
            presence: Presence::Undecided,
            est: 0,
            lst: horizon,
            eet: 0,
            let_: horizon,
            min_len,
            max_len,
        }
    }

    pub fn is_present(&self) -> bool {
        self.presence == Presence::Present
    }

    pub fn is_absent(&self) -> bool {
        self.presence == Presence::Absent
    }

    /// Start, end and length are all pinned.
    pub fn is_fixed(&self) -> bool {
        self.est == self.lst && self.eet == self.let_
    }

    /// Tighten the internal consistency between start, end and length
    /// windows. Returns whether anything changed, or `Err(())` when a window
    /// empties.
    pub fn normalize(&mut self) -> Result<bool, ()> {
        let before = *self;
        self.eet = self.eet.max(self.est + self.min_len);
        self.let_ = self.let_.min(self.lst + self.max_len);
        self.est = self.est.max(self.eet - self.max_len);
        self.lst = self.lst.min(self.let_ - self.min_len);
        self.min_len = self.min_len.max(self.eet - self.lst);
        self.max_len = self.max_len.min(self.let_ - self.est);
        if self.est > self.lst || self.eet > self.let_ || self.min_len > self.max_len {
            return Err(());
        }
        Ok(before != *self)
    }
}
