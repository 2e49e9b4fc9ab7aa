use std::cmp::Ordering;
use std::fmt;

/// Letter families. Declaration order is the canonical letter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    X,
    Y,
    Z,
    W,
    H,
    K,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::X, Kind::Y, Kind::Z, Kind::W, Kind::H, Kind::K];

    pub fn symbol(self) -> char {
        match self {
            Kind::X => 'x',
            Kind::Y => 'y',
            Kind::Z => 'z',
            Kind::W => 'w',
            Kind::H => 'h',
            Kind::K => 'k',
        }
    }

    pub fn from_symbol(c: char) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.symbol() == c)
    }
}

/// A finite alphabet `{k_1, …, k_size}` of one kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub kind: Kind,
    pub size: usize,
}

impl Alphabet {
    pub fn new(kind: Kind, size: usize) -> Self {
        assert!(size >= 1, "alphabets are nonempty");
        Alphabet { kind, size }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (1..=self.size).map(move |i| Letter::new(self.kind, i))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.kind == self.kind && letter.index() <= self.size
    }
}

/// An indexed indeterminate such as `x2`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: Kind,
    index: u32,
}

impl Letter {
    pub fn new(kind: Kind, index: usize) -> Self {
        assert!(index >= 1, "letter indices start at 1");
        Letter {
            kind,
            index: index as u32,
        }
    }

    pub fn x(i: usize) -> Self {
        Letter::new(Kind::X, i)
    }

    pub fn y(i: usize) -> Self {
        Letter::new(Kind::Y, i)
    }

    pub fn z(i: usize) -> Self {
        Letter::new(Kind::Z, i)
    }

    /// 1-based index.
    pub fn index(self) -> usize {
        self.index as usize
    }

    /// 0-based position, for indexing tuples.
    pub fn slot(self) -> usize {
        self.index as usize - 1
    }

    pub fn with_kind(self, kind: Kind) -> Self {
        Letter { kind, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.symbol(), self.index)
    }
}

/// A word over letters; the empty word is the unit `1`.
///
/// Ordered graded-lexicographically: shorter words first, then letter by
/// letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters of the given kind, `|w|_kind`.
    pub fn count_kind(&self, kind: Kind) -> usize {
        self.0.iter().filter(|l| l.kind == kind).count()
    }

    pub fn has_kind(&self, kind: Kind) -> bool {
        self.0.iter().any(|l| l.kind == kind)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// The word with its first letter removed.
    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1*x2^2*x1`; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}
