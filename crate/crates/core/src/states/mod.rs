//! States: maps `ω : E → [0, 1]` with `ω(1) = 1` and
//! `ω(x ⊕ y) = ω(x) + ω(y)` whenever `x ⊕ y` is defined.
//!
//! Everything is exact. The additivity equalities are eliminated into an
//! affine parametrisation `ω = p + M·t`; the bounds then cut out a polytope
//! in `t`. Only the lower bounds are kept as inequalities: `x ⊕ x' = 1`
//! gives `ω(x) = 1 - ω(x')`, so `ω(x) <= 1` is implied.
//!
//! [`find_state`] returns the lexicographically least state (a vertex),
//! found by successive exact simplex minimisations. [`extreme_states`]
//! enumerates all vertices with the double description method.

mod affine;
mod dd;
mod simplex;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use self::affine::Affine;
use self::simplex::{minimize, Lp};
use crate::error::falsified;
use crate::structure::decompose;
use crate::{Caps, EffectAlgebra, Elem, ElemSet, Error, LatticeEa, Result};

pub type Rational = num_rational::BigRational;

/// Values of a state, indexed by element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub values: Vec<Rational>,
}

impl State {
    pub fn value(&self, x: Elem) -> &Rational {
        &self.values[x]
    }
}

/// Why a candidate is not a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    /// Wrong number of values.
    Length {
        expected: usize,
        got: usize,
    },
    /// A value outside `[0, 1]`.
    Range {
        x: Elem,
    },
    Zero,
    One,
    /// `ω(x ⊕ y) != ω(x) + ω(y)` with `x ⊕ y = z`.
    Additivity {
        x: Elem,
        y: Elem,
        z: Elem,
    },
}

/// Exact check of the state conditions.
pub fn is_state(e: &EffectAlgebra, values: &[Rational]) -> Result<(), StateViolation> {
    if values.len() != e.len() {
        return Err(StateViolation::Length { expected: e.len(), got: values.len() });
    }
    if let Some(x) = values.iter().position(|v| v.is_negative() || *v > Rational::one()) {
        return Err(StateViolation::Range { x });
    }
    if !values[0].is_zero() {
        return Err(StateViolation::Zero);
    }
    if !values[e.one()].is_one() {
        return Err(StateViolation::One);
    }
    match e.table().triples().find(|&(x, y, z)| &values[x] + &values[y] != values[z]) {
        Some((x, y, z)) => Err(StateViolation::Additivity { x, y, z }),
        None => Ok(()),
    }
}

/// The linear system whose solutions are the states: one variable per
/// element, one equality per defined sum, `0 <= v <= 1`, `v_0 = 0`,
/// `v_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePolytope {
    pub variables: usize,
    /// `v_x + v_y = v_z` for every defined `x ⊕ y = z` with `x <= y`,
    /// excluding the trivial sums with 0.
    pub equalities: Vec<(Elem, Elem, Elem)>,
    pub zero: Elem,
    pub one: Elem,
}

impl StatePolytope {
    pub fn of(e: &EffectAlgebra) -> Self {
        StatePolytope {
            variables: e.len(),
            equalities: e.table().triples().filter(|&(x, _, _)| x != 0).collect(),
            zero: 0,
            one: e.one(),
        }
    }

    /// `None` if the equalities are inconsistent.
    fn parametrise(&self, pinned: &[(Elem, Rational)]) -> Option<Affine> {
        let mut a = Affine::identity(self.variables);
        let q1 = Rational::one();
        a.constrain(&[(self.zero, q1.clone())], &Rational::zero()).ok()?;
        a.constrain(&[(self.one, q1.clone())], &q1).ok()?;
        for (x, v) in pinned {
            a.constrain(&[(*x, q1.clone())], v).ok()?;
        }
        for &(x, y, z) in &self.equalities {
            let coeffs = if x == y {
                [(x, Rational::from_integer(2.into())), (z, -q1.clone())].to_vec()
            } else {
                [(x, q1.clone()), (y, q1.clone()), (z, -q1.clone())].to_vec()
            };
            a.constrain(&coeffs, &Rational::zero()).ok()?;
        }
        Some(a)
    }
}

/// `p_i + M_i·t >= 0` for every element, zero rows dropped after checking.
/// `None` if a constant row is negative.
fn lower_bounds(a: &Affine) -> Option<Vec<(Vec<Rational>, Rational)>> {
    let mut out = Vec::new();
    for (pi, mi) in a.p.iter().zip(&a.m) {
        if mi.iter().all(Zero::is_zero) {
            if pi.is_negative() {
                return None;
            }
        } else {
            out.push((mi.clone(), -pi.clone()));
        }
    }
    Some(out)
}

/// Lexicographically least point of the polytope, or `None` if empty.
fn lexmin(mut a: Affine) -> Option<Vec<Rational>> {
    for i in 0..a.p.len() {
        if a.free == 0 {
            break;
        }
        if a.row_is_zero(i) {
            continue;
        }
        let cons = lower_bounds(&a)?;
        match minimize(&a.m[i], &cons) {
            Lp::Optimal { value, .. } => {
                let row = a.m[i].clone();
                a.impose(&row, &value).expect("an attained value is consistent");
            }
            Lp::Infeasible => return None,
            Lp::Unbounded => unreachable!("states are bounded"),
        }
    }
    lower_bounds(&a)?;
    Some(a.p)
}

fn checked(e: &EffectAlgebra, values: Vec<Rational>) -> Result<State> {
    is_state(e, &values).map_err(|v| falsified("solver output is a state", format!("{v:?}")))?;
    Ok(State { values })
}

/// The lexicographically least state in the element order, or `None` when
/// the algebra has no state.
pub fn find_state(e: &EffectAlgebra) -> Result<Option<State>> {
    match StatePolytope::of(e).parametrise(&[]).and_then(lexmin) {
        Some(v) => checked(e, v).map(Some),
        None => Ok(None),
    }
}

/// All extreme states, sorted lexicographically.
pub fn extreme_states(e: &EffectAlgebra, caps: &Caps) -> Result<Vec<State>> {
    Caps::check(caps.states, "state polytope variables", e.len())?;
    let Some(a) = StatePolytope::of(e).parametrise(&[]) else {
        return Ok(Vec::new());
    };
    let Some(cons) = lower_bounds(&a) else {
        return Ok(Vec::new());
    };
    if a.free > 0 && matches!(minimize(&alloc::vec![Rational::zero(); a.free], &cons), Lp::Infeasible) {
        return Ok(Vec::new());
    }
    let mut out =
        dd::vertices(a.free, &cons).into_iter().map(|t| checked(e, a.eval(&t))).collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// How the atom-wise candidate fared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastPath {
    /// The candidate is a state extending the given one.
    Hit,
    /// The candidate is not a state or does not extend.
    Miss,
    /// Some `n_a·a` lies outside the subalgebra, so there is no candidate.
    NotApplicable,
}

/// Extending a state from a sub-effect algebra `Q` to `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionProblem {
    pub sub: ElemSet,
    /// The given values on `Q`, as `(element, value)`.
    pub given: Vec<(Elem, Rational)>,
    pub feasible: bool,
    /// An extension; the atom-wise candidate when it was accepted,
    /// otherwise the lexicographically least extension.
    pub witness: Option<State>,
    pub fast_path: FastPath,
}

/// Decides whether `given` (a state on `Q`) extends to a state on `E`.
///
/// First tries the atom-wise candidate `ω̃(x) = Σ k/n_a · ω(n_a·a)` over
/// the decomposition of `x`; it is accepted only after an exact check.
/// Otherwise the values on `Q` are pinned and the polytope is searched.
pub fn extend_state(e: LatticeEa<'_>, sub: &ElemSet, given: &[(Elem, Rational)]) -> Result<ExtensionProblem> {
    if !e.sub_effect_algebra(sub).is_sub {
        return Err(Error::InvalidArgument("Q is not a sub-effect algebra".into()));
    }
    let mut on_q: Vec<Option<Rational>> = alloc::vec![None; e.len()];
    for (x, v) in given {
        if !sub.contains(*x) {
            return Err(Error::InvalidArgument(format!("element {x} is not in Q")));
        }
        on_q[*x] = Some(v.clone());
    }
    if let Some(x) = sub.iter().find(|&x| on_q[x].is_none()) {
        return Err(Error::InvalidArgument(format!("no value given for element {x}")));
    }
    let restricted = e.restrict(sub)?;
    let members = sub.to_vec();
    let q_values: Vec<Rational> = members.iter().map(|&x| on_q[x].clone().expect("checked")).collect();
    if let Err(v) = is_state(&restricted, &q_values) {
        return Err(Error::InvalidArgument(format!("the given values are not a state on Q: {v:?}")));
    }
    let mut given: Vec<(Elem, Rational)> = members.iter().map(|&x| (x, on_q[x].clone().expect("checked"))).collect();
    given.sort();

    let (fast_path, candidate) = atom_wise(e, &on_q)?;
    if let (FastPath::Hit, Some(values)) = (fast_path, candidate) {
        return Ok(ExtensionProblem {
            sub: sub.clone(),
            given,
            feasible: true,
            witness: Some(State { values }),
            fast_path,
        });
    }
    let witness = match StatePolytope::of(&e).parametrise(&given).and_then(lexmin) {
        Some(v) => Some(checked(&e, v)?),
        None => None,
    };
    Ok(ExtensionProblem { sub: sub.clone(), given, feasible: witness.is_some(), witness, fast_path })
}

fn atom_wise(e: LatticeEa<'_>, on_q: &[Option<Rational>]) -> Result<(FastPath, Option<Vec<Rational>>)> {
    let mut values = Vec::with_capacity(e.len());
    for x in e.elems() {
        let mut v = Rational::zero();
        for &(a, k) in &decompose(e, x)?.terms {
            let n = e.n_of(a);
            let top = e.multiple(a, n).expect("n_a");
            let Some(w) = &on_q[top] else {
                return Ok((FastPath::NotApplicable, None));
            };
            v += Rational::new(k.into(), n.into()) * w;
        }
        values.push(v);
    }
    let extends = on_q.iter().enumerate().all(|(x, w)| w.as_ref().is_none_or(|w| *w == values[x]));
    if extends && is_state(&e, &values).is_ok() {
        Ok((FastPath::Hit, Some(values)))
    } else {
        Ok((FastPath::Miss, None))
    }
}

/// `E₁`: finite elements (0 and finite sums of atoms), their
/// orthosupplements, and the union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Report {
    pub finite: ElemSet,
    pub cofinite: ElemSet,
    pub e1: ElemSet,
}

/// Computes `E₁` by closing `{0}` under adding atoms, and verifies that it
/// is a sub-lattice effect algebra.
pub fn e1_subalgebra(e: LatticeEa<'_>) -> Result<E1Report> {
    let n = e.len();
    let mut finite = ElemSet::from_elems(n, [0]);
    let mut frontier = alloc::vec![0];
    while let Some(x) = frontier.pop() {
        for &a in e.atoms() {
            if let Some(y) = e.sum(x, a) {
                if !finite.contains(y) {
                    finite.insert(y);
                    frontier.push(y);
                }
            }
        }
    }
    let cofinite = ElemSet::from_elems(n, finite.iter().map(|x| e.supp(x)));
    let e1 = finite.union(&cofinite);
    if !e.sub_effect_algebra(&e1).is_sub_lattice_effect_algebra() {
        return Err(falsified("E1 is a sub-lattice effect algebra", format!("{:?}", e1.to_vec())));
    }
    Ok(E1Report { finite, cofinite, e1 })
}

/// Extreme states of the sub-effect algebra `Q`, as `(element, value)`
/// lists over `Q`.
pub fn extreme_states_on(e: &EffectAlgebra, sub: &ElemSet, caps: &Caps) -> Result<Vec<Vec<(Elem, Rational)>>> {
    let restricted = e.restrict(sub)?;
    let members = sub.to_vec();
    Ok(extreme_states(&restricted, caps)?
        .into_iter()
        .map(|s| members.iter().copied().zip(s.values).collect())
        .collect())
}
