use std::fmt;

use crate::bnc::Side;
use crate::error::{Error, Result};

/// Upper bound on the number of stored word values in one table.
pub const MAX_TABLE_ENTRIES: usize = 1 << 22;

/// Finite two-faced alphabet. Left variables come first in index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    left: usize,
}

impl Alphabet {
    pub fn new<L: Into<String>, R: Into<String>>(
        left_vars: impl IntoIterator<Item = L>,
        right_vars: impl IntoIterator<Item = R>,
    ) -> Result<Self> {
        let mut names: Vec<String> = left_vars.into_iter().map(Into::into).collect();
        let left = names.len();
        names.extend(right_vars.into_iter().map(Into::into));
        if names.is_empty() {
            return Err(Error::InvalidParameter("alphabet must contain a variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidParameter("empty variable name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidParameter(format!("duplicate variable name `{a}`")));
            }
        }
        Ok(Alphabet { names, left })
    }

    /// Alphabet with only left variables.
    pub fn single_face<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Self> {
        Alphabet::new(vars, Vec::<String>::new())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.names.len() - self.left
    }

    pub fn left_vars(&self) -> &[String] {
        &self.names[..self.left]
    }

    pub fn right_vars(&self) -> &[String] {
        &self.names[self.left..]
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn side(&self, var: usize) -> Side {
        if var < self.left {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Resolves `(name, side)` letters, checking each tag against the alphabet.
    pub fn parse_word<S: AsRef<str>>(&self, letters: &[(S, Side)]) -> Result<Word> {
        letters
            .iter()
            .map(|(name, side)| {
                let var = self.index_of(name.as_ref())?;
                if self.side(var) != *side {
                    return Err(Error::SideMismatch {
                        name: name.as_ref().to_string(),
                        expected: self.side(var).name(),
                        found: side.tag().to_string(),
                    });
                }
                Ok(var)
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.0.iter().find(|&&v| v >= self.len()) {
            Some(v) => Err(Error::UnknownVariable(format!("#{v}"))),
            None => Ok(()),
        }
    }

    pub fn sides_of(&self, word: &Word) -> Vec<Side> {
        word.0.iter().map(|&v| self.side(v)).collect()
    }

    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.0
            .iter()
            .map(|&v| format!("{}:{}", self.names[v], self.side(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A word over an [`Alphabet`], stored as variable indices. The side of every
/// letter is the side of its variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Dense table of reals indexed by every word of length `0..=degree_cap`.
/// Words of one length are stored in lexicographic order of their indices.
#[derive(Debug, Clone, PartialEq)]
pub struct WordTable {
    alphabet: Alphabet,
    degree_cap: usize,
    values: Vec<Vec<f64>>,
}

impl WordTable {
    fn sized(alphabet: Alphabet, degree_cap: usize) -> Result<Self> {
        let k = alphabet.len();
        let mut total = 0usize;
        let mut values = Vec::with_capacity(degree_cap + 1);
        for len in 0..=degree_cap {
            let count = k
                .checked_pow(len as u32)
                .filter(|c| c.saturating_add(total) <= MAX_TABLE_ENTRIES)
                .ok_or_else(|| {
                    Error::Budget(format!(
                        "{k} variables up to degree {degree_cap} exceeds {MAX_TABLE_ENTRIES} entries"
                    ))
                })?;
            total += count;
            values.push(vec![0.0; count]);
        }
        Ok(WordTable {
            alphabet,
            degree_cap,
            values,
        })
    }

    fn from_fn(alphabet: Alphabet, degree_cap: usize, mut f: impl FnMut(&Word) -> f64) -> Result<Self> {
        let mut table = WordTable::sized(alphabet, degree_cap)?;
        let k = table.alphabet.len();
        for len in 0..=degree_cap {
            for (idx, slot) in table.values[len].iter_mut().enumerate() {
                *slot = f(&decode(idx, len, k));
            }
        }
        Ok(table)
    }

    fn from_entries(
        alphabet: Alphabet,
        degree_cap: usize,
        entries: impl IntoIterator<Item = (Word, f64)>,
        need_empty: bool,
    ) -> Result<Self> {
        let mut table = WordTable::sized(alphabet, degree_cap)?;
        let mut filled: Vec<Vec<bool>> = table.values.iter().map(|v| vec![false; v.len()]).collect();
        for (word, value) in entries {
            table.alphabet.check_word(&word)?;
            if word.len() > degree_cap {
                return Err(Error::DegreeOverflow {
                    len: word.len(),
                    cap: degree_cap,
                });
            }
            let idx = table.index(word.letters());
            if filled[word.len()][idx] {
                return Err(Error::TableParse(format!(
                    "duplicate entry for word {}",
                    table.alphabet.render(&word)
                )));
            }
            filled[word.len()][idx] = true;
            table.values[word.len()][idx] = value;
        }
        let start = if need_empty { 0 } else { 1 };
        for len in start..=degree_cap {
            if let Some(idx) = filled[len].iter().position(|f| !f) {
                let word = decode(idx, len, table.alphabet.len());
                return Err(Error::MissingEntry(table.alphabet.render(&word)));
            }
        }
        Ok(table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    #[inline]
    pub(crate) fn index(&self, letters: &[usize]) -> usize {
        let k = self.alphabet.len();
        letters.iter().fold(0, |acc, &v| acc * k + v)
    }

    /// Value at a word given as variable indices; `None` past the cap.
    pub fn value(&self, letters: &[usize]) -> Option<f64> {
        self.values
            .get(letters.len())
            .map(|row| row[self.index(letters)])
    }

    #[inline]
    pub(crate) fn value_at(&self, len: usize, idx: usize) -> f64 {
        self.values[len][idx]
    }

    pub fn get(&self, word: &Word) -> Result<f64> {
        self.alphabet.check_word(word)?;
        self.value(word.letters()).ok_or(Error::DegreeOverflow {
            len: word.len(),
            cap: self.degree_cap,
        })
    }

    /// Entries in (length, lexicographic) order, including the empty word.
    pub fn iter(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        let k = self.alphabet.len();
        self.values
            .iter()
            .enumerate()
            .flat_map(move |(len, row)| row.iter().enumerate().map(move |(idx, &v)| (decode(idx, len, k), v)))
    }

    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.alphabet.len();
        (0..self.values.get(len).map_or(0, Vec::len)).map(move |idx| decode(idx, len, k))
    }

    fn map(&self, mut f: impl FnMut(usize, f64) -> f64) -> WordTable {
        let mut out = self.clone();
        for (len, row) in out.values.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v = f(len, *v);
            }
        }
        out
    }

    fn zip(&self, other: &WordTable, f: impl Fn(f64, f64) -> f64) -> Result<WordTable> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (row, orow) in out.values.iter_mut().zip(&other.values) {
            for (v, o) in row.iter_mut().zip(orow) {
                *v = f(*v, *o);
            }
        }
        Ok(out)
    }

    pub(crate) fn check_compatible(&self, other: &WordTable) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?}/{:?} vs {:?}/{:?}",
                self.alphabet.left_vars(),
                self.alphabet.right_vars(),
                other.alphabet.left_vars(),
                other.alphabet.right_vars()
            )));
        }
        if self.degree_cap != other.degree_cap {
            return Err(Error::AlphabetMismatch(format!(
                "degree caps {} and {} differ",
                self.degree_cap, other.degree_cap
            )));
        }
        Ok(())
    }

    fn truncated(&self, cap: usize) -> Result<WordTable> {
        if cap > self.degree_cap {
            return Err(Error::DegreeOverflow {
                len: cap,
                cap: self.degree_cap,
            });
        }
        let mut out = self.clone();
        out.values.truncate(cap + 1);
        out.degree_cap = cap;
        Ok(out)
    }

    /// Largest absolute entrywise difference over nonempty words.
    pub fn max_abs_diff(&self, other: &WordTable) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self.values[1..]
            .iter()
            .zip(&other.values[1..])
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max))
    }
}

pub(crate) fn decode(mut idx: usize, len: usize, k: usize) -> Word {
    let mut letters = vec![0; len];
    for slot in letters.iter_mut().rev() {
        *slot = idx % k;
        idx /= k;
    }
    Word(letters)
}

macro_rules! table_newtype {
    ($name:ident) => {
        impl $name {
            pub fn alphabet(&self) -> &Alphabet {
                self.0.alphabet()
            }

            pub fn degree_cap(&self) -> usize {
                self.0.degree_cap()
            }

            pub fn table(&self) -> &WordTable {
                &self.0
            }

            pub fn get(&self, word: &Word) -> Result<f64> {
                self.0.get(word)
            }

            pub fn value(&self, letters: &[usize]) -> Option<f64> {
                self.0.value(letters)
            }

            /// Entries of nonempty words in (length, lexicographic) order.
            pub fn entries(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
                self.0.iter().filter(|(w, _)| !w.is_empty())
            }

            pub fn max_abs_diff(&self, other: &$name) -> Result<f64> {
                self.0.max_abs_diff(&other.0)
            }
        }
    };
}

/// A unital functional on words up to a degree cap, dense.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentFunctional(WordTable);

/// Cumulant values `kappa_chi` on every nonempty word up to a degree cap.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantTable(WordTable);

table_newtype!(MomentFunctional);
table_newtype!(CumulantTable);

impl MomentFunctional {
    /// Values from a closure on nonempty words; the empty word is set to 1.
    pub fn from_fn(alphabet: Alphabet, degree_cap: usize, mut f: impl FnMut(&Word) -> f64) -> Result<Self> {
        WordTable::from_fn(alphabet, degree_cap, |w| if w.is_empty() { 1.0 } else { f(w) })
            .map(MomentFunctional)
    }

    /// Requires an entry for every nonempty word up to the cap. An entry for
    /// the empty word is accepted only with value 1.
    pub fn from_entries(
        alphabet: Alphabet,
        degree_cap: usize,
        entries: impl IntoIterator<Item = (Word, f64)>,
    ) -> Result<Self> {
        let mut unit_seen = false;
        let mut bad_unit = None;
        let entries: Vec<(Word, f64)> = entries
            .into_iter()
            .filter(|(w, v)| {
                if w.is_empty() {
                    unit_seen = true;
                    if *v != 1.0 {
                        bad_unit = Some(*v);
                    }
                    false
                } else {
                    true
                }
            })
            .collect();
        if let Some(v) = bad_unit {
            return Err(Error::TableParse(format!("empty word must have value 1, got {v}")));
        }
        let _ = unit_seen;
        let mut table = WordTable::from_entries(alphabet, degree_cap, entries, false)?;
        table.values[0][0] = 1.0;
        Ok(MomentFunctional(table))
    }

    /// All moments of nonempty words vanish: the law of the zero family.
    pub fn delta_zero(alphabet: Alphabet, degree_cap: usize) -> Result<Self> {
        MomentFunctional::from_fn(alphabet, degree_cap, |_| 0.0)
    }

    /// `t * phi` on nonempty words (not a state unless `t == 1`).
    pub fn scaled(&self, t: f64) -> MomentFunctional {
        MomentFunctional(self.0.map(|len, v| if len == 0 { 1.0 } else { t * v }))
    }

    pub fn truncated(&self, cap: usize) -> Result<MomentFunctional> {
        self.0.truncated(cap).map(MomentFunctional)
    }
}

impl CumulantTable {
    pub fn from_fn(alphabet: Alphabet, degree_cap: usize, mut f: impl FnMut(&Word) -> f64) -> Result<Self> {
        WordTable::from_fn(alphabet, degree_cap, |w| if w.is_empty() { 0.0 } else { f(w) })
            .map(CumulantTable)
    }

    /// Requires an entry for every nonempty word up to the cap; an empty
    /// word entry, if present, is ignored.
    pub fn from_entries(
        alphabet: Alphabet,
        degree_cap: usize,
        entries: impl IntoIterator<Item = (Word, f64)>,
    ) -> Result<Self> {
        let entries = entries.into_iter().filter(|(w, _)| !w.is_empty());
        WordTable::from_entries(alphabet, degree_cap, entries, false).map(CumulantTable)
    }

    pub fn zeros(alphabet: Alphabet, degree_cap: usize) -> Result<Self> {
        CumulantTable::from_fn(alphabet, degree_cap, |_| 0.0)
    }

    pub fn scaled(&self, t: f64) -> CumulantTable {
        CumulantTable(self.0.map(|_, v| t * v))
    }

    /// Entry of length `n` multiplied by `factor(n)`.
    pub fn scaled_by_length(&self, factor: impl Fn(usize) -> f64) -> CumulantTable {
        CumulantTable(self.0.map(|len, v| if len == 0 { 0.0 } else { factor(len) * v }))
    }

    pub fn add(&self, other: &CumulantTable) -> Result<CumulantTable> {
        self.0.zip(&other.0, |a, b| a + b).map(CumulantTable)
    }

    pub fn truncated(&self, cap: usize) -> Result<CumulantTable> {
        self.0.truncated(cap).map(CumulantTable)
    }
}
