use serde::Serialize;

/// Non-fatal numerical diagnostics attached to a result.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Spectral energy outside the representable frequency band.
    Aliasing { fraction: f64 },
    /// Energy carried by the outermost lattice shell of a quadrature.
    Truncation { fraction: f64 },
    /// Relative contribution of the `|k| = K` shell to a bracket sum.
    BracketTail { omega: Vec<f64>, relative: f64 },
    IllConditionedFiber { omega: Vec<f64>, condition: f64 },
    /// A multiplier was applied although its Mikhlin check failed.
    MikhlinOverride,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Warned<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Warned<T> {
    pub fn clean(value: T) -> Self {
        Self { value, warnings: Vec::new() }
    }

    pub fn new(value: T, warnings: Vec<Warning>) -> Self {
        Self { value, warnings }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Warned<U> {
        Warned { value: f(self.value), warnings: self.warnings }
    }

    /// Move the warnings into `sink` and return the value.
    pub fn drain_into(self, sink: &mut Vec<Warning>) -> T {
        push_unique(sink, self.warnings);
        self.value
    }

    pub fn into_value(self) -> T {
        self.value
    }
}

/// Append warnings, keeping only the worst entry of each scalar kind.
pub(crate) fn push_unique(sink: &mut Vec<Warning>, more: Vec<Warning>) {
    for w in more {
        let slot = sink.iter_mut().find(|x| std::mem::discriminant(*x) == std::mem::discriminant(&w));
        match (slot, &w) {
            (Some(Warning::Aliasing { fraction: a }), Warning::Aliasing { fraction: b })
            | (Some(Warning::Truncation { fraction: a }), Warning::Truncation { fraction: b }) => {
                *a = a.max(*b);
            }
            (Some(x @ Warning::BracketTail { .. }), Warning::BracketTail { relative: b, .. }) => {
                if let Warning::BracketTail { relative: a, .. } = x {
                    if b > a {
                        *x = w.clone();
                    }
                }
            }
            (Some(x @ Warning::IllConditionedFiber { .. }), Warning::IllConditionedFiber { condition: b, .. }) => {
                if let Warning::IllConditionedFiber { condition: a, .. } = x {
                    if b > a {
                        *x = w.clone();
                    }
                }
            }
            (Some(Warning::MikhlinOverride), Warning::MikhlinOverride) => {}
            _ => sink.push(w),
        }
    }
}
