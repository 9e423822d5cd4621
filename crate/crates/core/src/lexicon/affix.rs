//! Finite-valued affix dimensions and their unification.
//!
//! Every dimension is a small closed enumeration. An affix slot holds a *set*
//! of admissible values; an unconstrained slot is the full set. Unification
//! is componentwise intersection and fails as soon as one component empties.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use thiserror::Error;

/// A closed enumeration usable as an affix dimension.
pub trait Dimension: Copy + Eq + Hash + fmt::Debug + 'static {
    const NAME: AffixDimension;
    const ALL: &'static [Self];

    /// Spelling used inside NLML value tags.
    fn as_str(self) -> &'static str;

    /// Spelling used as a key in lexicon files. Defaults to the NLML spelling.
    fn key(self) -> &'static str {
        self.as_str()
    }

    fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|v| v.as_str() == s || v.key() == s)
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|v| *v == self).expect("value listed in ALL")
    }
}

/// Names the dimensions, used in error reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffixDimension {
    Number,
    Person,
    Case,
    Tense,
    Grade,
}

impl AffixDimension {
    pub fn as_str(self) -> &'static str {
        match self {
            AffixDimension::Number => "numb",
            AffixDimension::Person => "pers",
            AffixDimension::Case => "case",
            AffixDimension::Tense => "tense",
            AffixDimension::Grade => "grade",
        }
    }
}

impl fmt::Display for AffixDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! dimension {
    ($(#[$m:meta])* $name:ident, $dim:ident, [$($var:ident => $s:literal $(/ $k:literal)?),+ $(,)?]) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($var),+
        }

        impl Dimension for $name {
            const NAME: AffixDimension = AffixDimension::$dim;
            const ALL: &'static [Self] = &[$($name::$var),+];

            fn as_str(self) -> &'static str {
                match self {
                    $($name::$var => $s),+
                }
            }

            fn key(self) -> &'static str {
                match self {
                    $($name::$var => dimension!(@key $s $(, $k)?)),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
    (@key $s:literal) => { $s };
    (@key $s:literal, $k:literal) => { $k };
}

dimension!(Number, Number, [Sing => "sing", Plur => "plur"]);
dimension!(Person, Person, [First => "first", Second => "second", Third => "third"]);
dimension!(Case, Case, [Nom => "nom", Dat => "dat"]);
dimension!(
    /// Finite tenses of a verb chain plus the non-finite forms of a kernel verb.
    Tense,
    Tense,
    [
        Present => "present",
        Past => "past",
        PresentProgressive => "present progressive" / "present_progressive",
        PastProgressive => "past progressive" / "past_progressive",
        Perfect => "perfect",
        Modal => "modal",
        Infinitive => "infi" / "infinitive",
        PastParticiple => "past participle" / "past_participle",
        PresentParticiple => "present participle" / "present_participle",
    ]
);
dimension!(
    Grade,
    Grade,
    [
        Absolute => "absolute",
        Comparative => "comparative",
        Superlative => "superlative",
        Predicative => "predicative",
    ]
);

/// A non-empty-or-failed set of values of one dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValueSet<D> {
    bits: u16,
    _dim: PhantomData<D>,
}

impl<D: Dimension> ValueSet<D> {
    pub fn full() -> Self {
        Self::from_bits((1u16 << D::ALL.len()) - 1)
    }

    pub fn empty() -> Self {
        Self::from_bits(0)
    }

    pub fn only(value: D) -> Self {
        Self::from_bits(1 << value.index())
    }

    pub fn from_values<I: IntoIterator<Item = D>>(values: I) -> Self {
        Self::from_bits(values.into_iter().fold(0, |acc, v| acc | (1 << v.index())))
    }

    fn from_bits(bits: u16) -> Self {
        ValueSet { bits, _dim: PhantomData }
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self == Self::full()
    }

    pub fn contains(self, value: D) -> bool {
        self.bits & (1 << value.index()) != 0
    }

    pub fn intersect(self, other: Self) -> Self {
        Self::from_bits(self.bits & other.bits)
    }

    pub fn union(self, other: Self) -> Self {
        Self::from_bits(self.bits | other.bits)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The single value, if the set is resolved.
    pub fn single(self) -> Option<D> {
        if self.len() == 1 {
            self.iter().next()
        } else {
            None
        }
    }

    pub fn iter(self) -> impl Iterator<Item = D> {
        D::ALL.iter().copied().filter(move |v| self.contains(*v))
    }

    /// Parses `a|b|c`. Returns `None` on an unknown value or an empty list.
    pub fn parse(s: &str) -> Option<Self> {
        let mut set = Self::empty();
        for part in s.split('|') {
            set = set.union(Self::only(D::parse(part.trim())?));
        }
        (!set.is_empty()).then_some(set)
    }
}

impl<D: Dimension> Default for ValueSet<D> {
    fn default() -> Self {
        Self::full()
    }
}

impl<D: Dimension> fmt::Display for ValueSet<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str("|")?;
            }
            first = false;
            f.write_str(v.as_str())?;
        }
        Ok(())
    }
}

impl<D: Dimension> fmt::Debug for ValueSet<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("affixes do not agree in {dimension}")]
pub struct UnificationFailure {
    pub dimension: AffixDimension,
}

/// The affix bundle of a word or phrase. Unconstrained dimensions are full sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AffixValue {
    pub number: ValueSet<Number>,
    pub person: ValueSet<Person>,
    pub case: ValueSet<Case>,
    pub tense: ValueSet<Tense>,
    pub grade: ValueSet<Grade>,
}

impl AffixValue {
    pub fn unconstrained() -> Self {
        Self::default()
    }

    pub fn with_number(mut self, number: ValueSet<Number>) -> Self {
        self.number = number;
        self
    }

    pub fn with_person(mut self, person: ValueSet<Person>) -> Self {
        self.person = person;
        self
    }

    pub fn with_case(mut self, case: ValueSet<Case>) -> Self {
        self.case = case;
        self
    }

    pub fn with_tense(mut self, tense: ValueSet<Tense>) -> Self {
        self.tense = tense;
        self
    }

    pub fn with_grade(mut self, grade: ValueSet<Grade>) -> Self {
        self.grade = grade;
        self
    }

    /// Agreement features only: number and person.
    pub fn agreement(self) -> Self {
        Self::unconstrained()
            .with_number(self.number)
            .with_person(self.person)
    }
}

fn meet<D: Dimension>(a: ValueSet<D>, b: ValueSet<D>) -> Result<ValueSet<D>, UnificationFailure> {
    let m = a.intersect(b);
    if m.is_empty() {
        Err(UnificationFailure { dimension: D::NAME })
    } else {
        Ok(m)
    }
}

/// Componentwise intersection; fails on the first empty dimension.
pub fn unify(a: AffixValue, b: AffixValue) -> Result<AffixValue, UnificationFailure> {
    Ok(AffixValue {
        number: meet(a.number, b.number)?,
        person: meet(a.person, b.person)?,
        case: meet(a.case, b.case)?,
        tense: meet(a.tense, b.tense)?,
        grade: meet(a.grade, b.grade)?,
    })
}
