//! Test functions.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use polymin::Domain;

pub type Objective = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub formula: String,
    pub objective: Objective,
    pub xinf: f64,
    pub xsup: f64,
    /// Part of the six-function accuracy suite.
    pub core: bool,
}

impl fmt::Debug for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorpusEntry")
            .field("name", &self.name)
            .field("formula", &self.formula)
            .field("xinf", &self.xinf)
            .field("xsup", &self.xsup)
            .finish_non_exhaustive()
    }
}

impl CorpusEntry {
    pub fn new<F>(name: &str, formula: &str, xinf: f64, xsup: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            formula: formula.to_string(),
            objective: Arc::new(f),
            xinf,
            xsup,
            core: false,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.objective)(x)
    }

    pub fn domain(&self) -> Domain {
        Domain::new(self.xinf, self.xsup).expect("corpus domains are valid")
    }
}

/// Deep narrow well among shallow ripples.
pub fn needle(x: f64) -> f64 {
    0.25 * (6.0 * x).sin() + 0.01 * (x - 5.0).powi(2) - 3.0 * (-((x - 7.0) / 0.2).powi(2)).exp()
}

/// An ordered, name-addressable set of test functions.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn builtin() -> Self {
        let mut c = Self::default();
        let mut core = |e: CorpusEntry| c.register(CorpusEntry { core: true, ..e });
        core(CorpusEntry::new("quadratic", "(x-2)^2", 0.0, 10.0, |x| {
            (x - 2.0).powi(2)
        }));
        core(CorpusEntry::new("double-well", "x^4 - x^2", -2.0, 2.0, |x| {
            x.powi(4) - x * x
        }));
        core(CorpusEntry::new("sines", "sin(x) + sin(10x/3)", 2.7, 7.5, |x| {
            x.sin() + (10.0 * x / 3.0).sin()
        }));
        core(CorpusEntry::new("wild", "x^2/100 + sin(8x) exp(x/5)", 0.0, 10.0, |x| {
            x * x / 100.0 + (8.0 * x).sin() * (x / 5.0).exp()
        }));
        core(CorpusEntry::new("plateau", "1 + exp(x-8) sin(x^2)", 0.0, 10.0, |x| {
            1.0 + (x - 8.0).exp() * (x * x).sin()
        }));
        core(CorpusEntry::new(
            "needle",
            "0.25 sin(6x) + 0.01 (x-5)^2 - 3 exp(-((x-7)/0.2)^2)",
            0.0,
            10.0,
            needle,
        ));
        c.register(CorpusEntry::new(
            "gramacy-lee",
            "sin(10 pi x)/(2x) + (x-1)^4",
            0.5,
            2.5,
            |x| (10.0 * PI * x).sin() / (2.0 * x) + (x - 1.0).powi(4),
        ));
        c.register(CorpusEntry::new(
            "shubert",
            "sum_{i=1..5} i cos((i+1)x + i)",
            -10.0,
            10.0,
            |x| {
                (1..=5)
                    .map(|i| i as f64 * ((i as f64 + 1.0) * x + i as f64).cos())
                    .sum()
            },
        ));
        c.register(CorpusEntry::new("forrester", "(6x-2)^2 sin(12x-4)", 0.0, 1.0, |x| {
            (6.0 * x - 2.0).powi(2) * (12.0 * x - 4.0).sin()
        }));
        c.register(CorpusEntry::new(
            "rastrigin",
            "10 + x^2 - 10 cos(2 pi x)",
            -5.12,
            5.12,
            |x| 10.0 + x * x - 10.0 * (2.0 * PI * x).cos(),
        ));
        c
    }

    /// Adds an entry; a later entry with the same name replaces the earlier.
    pub fn register(&mut self, entry: CorpusEntry) {
        Domain::new(entry.xinf, entry.xsup).expect("invalid corpus domain");
        match self.entries.iter_mut().find(|e| e.name == entry.name) {
            Some(slot) => *slot = entry,
            None => self.entries.push(entry),
        }
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn core(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(|e| e.core)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    /// Entries whose names are listed, in the given order; all when empty.
    pub fn select(&self, names: &[String]) -> Result<Vec<CorpusEntry>, String> {
        if names.is_empty() {
            return Ok(self.entries.clone());
        }
        names
            .iter()
            .map(|n| {
                self.get(n)
                    .cloned()
                    .ok_or_else(|| format!("unknown function '{n}' (known: {})", self.names().join(", ")))
            })
            .collect()
    }
}
