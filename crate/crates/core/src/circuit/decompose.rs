//! Lowering of high-level gates to Toffoli ladders and then to elementary
//! gates (single-qubit unitaries and CNOT).

use std::f64::consts::FRAC_PI_4;

use super::spl::{self, Mat2};
use super::{Gate, GateSink};
use crate::error::{Error, Result};

/// An elementary gate.
#[derive(Debug, Clone, PartialEq)]
pub enum Elementary {
    Single {
        qubit: usize,
        matrix: Mat2,
        name: &'static str,
    },
    Cnot {
        control: usize,
        target: usize,
    },
}

pub trait ElementarySink {
    fn push(&mut self, gate: Elementary);
}

impl ElementarySink for Vec<Elementary> {
    fn push(&mut self, gate: Elementary) {
        Vec::push(self, gate);
    }
}

fn single(sink: &mut impl ElementarySink, qubit: usize, matrix: Mat2, name: &'static str) {
    sink.push(Elementary::Single {
        qubit,
        matrix,
        name,
    });
}

fn cnot(sink: &mut impl ElementarySink, control: usize, target: usize) {
    sink.push(Elementary::Cnot { control, target });
}

fn toffoli_into(sink: &mut impl ElementarySink, a: usize, b: usize, t: usize) {
    let h = spl::hadamard();
    let tg = spl::phase(FRAC_PI_4);
    let tdg = spl::phase(-FRAC_PI_4);
    let s = spl::phase(2.0 * FRAC_PI_4);
    single(sink, t, h, "h");
    cnot(sink, b, t);
    single(sink, t, tdg, "tdg");
    cnot(sink, a, t);
    single(sink, t, tg, "t");
    cnot(sink, b, t);
    single(sink, t, tdg, "tdg");
    cnot(sink, a, t);
    single(sink, b, tdg, "tdg");
    single(sink, t, tg, "t");
    cnot(sink, a, b);
    single(sink, b, tdg, "tdg");
    cnot(sink, a, b);
    single(sink, a, tg, "t");
    single(sink, b, s, "s");
    single(sink, t, h, "h");
}

/// Toffoli as 6 CNOTs and 10 single-qubit gates (H, T, T†, S).
pub fn decompose_toffoli(c1: usize, c2: usize, target: usize) -> Vec<Elementary> {
    let mut out = Vec::with_capacity(16);
    toffoli_into(&mut out, c1, c2, target);
    out
}

/// `C^t X` as X/CNOT/Toffoli gates using borrowed (dirty) work qubits, which
/// are returned to their initial values.
///
/// With at least `t - 2` work qubits this is the standard V-shaped ladder of
/// `4(t - 2)` Toffolis. With fewer (but at least one) the controls are split in
/// two halves, each half borrowing the other as work space, for roughly `8t`
/// Toffolis.
pub fn decompose_mcx(controls: &[usize], target: usize, work: &[usize]) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    mcx_into(&mut out, controls, target, work)?;
    Ok(out)
}

fn required_work(t: usize) -> usize {
    match t {
        0..=2 => 0,
        _ => 1,
    }
}

pub(crate) fn mcx_into(
    sink: &mut impl GateSink,
    controls: &[usize],
    target: usize,
    work: &[usize],
) -> Result<()> {
    let t = controls.len();
    if t <= 2 {
        sink.push(Gate::mcx(controls, target));
        return Ok(());
    }
    if work.len() >= t - 2 {
        ladder(sink, controls, target, &work[..t - 2]);
        return Ok(());
    }
    if work.len() < required_work(t) {
        return Err(Error::InsufficientWorkQubits {
            controls: t,
            required: required_work(t),
            available: work.len(),
        });
    }
    split(sink, controls, target, work[0])
}

fn ladder(sink: &mut impl GateSink, c: &[usize], target: usize, a: &[usize]) {
    let t = c.len();
    debug_assert_eq!(a.len(), t - 2);
    let top = Gate::Toffoli {
        c1: c[t - 1],
        c2: a[t - 3],
        target,
    };
    // a[j] is toggled by c[j + 1] and a[j - 1]; a[0] by c[0] and c[1]
    let step = |j: usize| {
        if j == 0 {
            Gate::Toffoli {
                c1: c[0],
                c2: c[1],
                target: a[0],
            }
        } else {
            Gate::Toffoli {
                c1: c[j + 1],
                c2: a[j - 1],
                target: a[j],
            }
        }
    };
    for _ in 0..2 {
        sink.push(top.clone());
        for j in (1..t - 2).rev() {
            sink.push(step(j));
        }
        sink.push(step(0));
        for j in 1..t - 2 {
            sink.push(step(j));
        }
    }
}

fn split(
    sink: &mut impl GateSink,
    controls: &[usize],
    target: usize,
    borrowed: usize,
) -> Result<()> {
    let t = controls.len();
    let m1 = t.div_ceil(2);
    let (first, second) = controls.split_at(m1);

    let mut second_plus = second.to_vec();
    second_plus.push(borrowed);
    let mut work_first = second.to_vec();
    work_first.push(target);
    let work_second = first.to_vec();

    for _ in 0..2 {
        mcx_into(sink, first, borrowed, &work_first)?;
        mcx_into(sink, &second_plus, target, &work_second)?;
    }
    Ok(())
}

/// Controlled single-qubit unitary: 2 CNOTs and 4 single-qubit gates.
fn controlled_u(sink: &mut impl ElementarySink, control: usize, target: usize, u: &Mat2) {
    let (delta, alpha, theta, beta) = spl::zyz(u);
    let a = spl::mul(&spl::rz(alpha), &spl::ry(theta / 2.0));
    let b = spl::mul(&spl::ry(-theta / 2.0), &spl::rz(-(alpha + beta) / 2.0));
    let c = spl::rz((beta - alpha) / 2.0);
    single(sink, target, c, "u");
    cnot(sink, control, target);
    single(sink, target, b, "u");
    cnot(sink, control, target);
    single(sink, target, a, "u");
    single(sink, control, spl::phase(delta), "p");
}

struct Lowered<'a, S: ElementarySink>(&'a mut S);

impl<S: ElementarySink> GateSink for Lowered<'_, S> {
    fn push(&mut self, gate: Gate) {
        match gate {
            Gate::X(q) => single(self.0, q, spl::pauli_x(), "x"),
            Gate::Cnot { control, target } => cnot(self.0, control, target),
            Gate::Toffoli { c1, c2, target } => toffoli_into(self.0, c1, c2, target),
            other => unreachable!("ladders only emit X/CNOT/Toffoli, got {other:?}"),
        }
    }
}

/// Multi-controlled `u` with no spare qubit at all, built from controlled
/// square roots. Used only when a gate spans the whole circuit; the cost is
/// quadratic in the number of controls.
pub fn mcu_without_work(
    sink: &mut impl ElementarySink,
    controls: &[usize],
    target: usize,
    u: &Mat2,
) -> Result<()> {
    match controls {
        [] => single(sink, target, *u, "u"),
        [c] => controlled_u(sink, *c, target, u),
        [rest @ .., last] => {
            let v = spl::sqrt_unitary(u);
            let vdg = spl::dagger(&v);
            controlled_u(sink, *last, target, &v);
            mcx_into(&mut Lowered(sink), rest, *last, &[target])?;
            controlled_u(sink, *last, target, &vdg);
            mcx_into(&mut Lowered(sink), rest, *last, &[target])?;
            mcu_without_work(sink, rest, target, &v)?;
        }
    }
    Ok(())
}

/// Qubits of `0..width` not touched by `gate`, ascending.
fn free_qubits(gate: &Gate, width: usize) -> Vec<usize> {
    let mut used = vec![false; width];
    for q in gate.controls() {
        used[q] = true;
    }
    used[gate.target()] = true;
    (0..width).filter(|&q| !used[q]).collect()
}

/// Lowers one high-level gate to elementary gates. Work qubits for
/// multi-controlled gates are borrowed from the rest of the `width`-qubit
/// circuit.
pub fn expand_elementary(gate: &Gate, width: usize, sink: &mut impl ElementarySink) -> Result<()> {
    gate.validate(width)?;
    match gate {
        Gate::X(_) | Gate::Cnot { .. } | Gate::Toffoli { .. } => Lowered(sink).push(gate.clone()),
        Gate::Mcx { controls, target } => mcx_elementary(sink, controls, *target, width)?,
        Gate::Spl {
            alpha,
            beta,
            target,
        } => single(sink, *target, spl::spl_matrix(*alpha, *beta)?, "spl"),
        Gate::Cspl {
            controls,
            alpha,
            beta,
            target,
        } => {
            let m = spl::spl_matrix(*alpha, *beta)?;
            let w = spl::reflection_frame(&m);
            single(sink, *target, spl::dagger(&w), "w");
            mcx_elementary(sink, controls, *target, width)?;
            single(sink, *target, w, "w");
        }
    }
    Ok(())
}

fn mcx_elementary(
    sink: &mut impl ElementarySink,
    controls: &[usize],
    target: usize,
    width: usize,
) -> Result<()> {
    let work = free_qubits(&Gate::mcx(controls, target), width);
    if controls.len() > 2 && work.is_empty() {
        mcu_without_work(sink, controls, target, &spl::pauli_x())
    } else {
        mcx_into(&mut Lowered(sink), controls, target, &work)
    }
}

/// Tag for how a multi-controlled gate is lowered, which fully determines its
/// elementary cost for a given number of controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Lowering {
    Direct,
    Ladder,
    Split,
    NoWork,
}

pub(crate) fn lowering(controls: usize, free: usize) -> Lowering {
    match controls {
        0..=2 => Lowering::Direct,
        t if free >= t - 2 => Lowering::Ladder,
        _ if free >= 1 => Lowering::Split,
        _ => Lowering::NoWork,
    }
}

/// A throwaway qubit layout with the given lowering; counts derived from it
/// match any other layout with the same `(controls, lowering)`.
pub(crate) fn canonical_layout(controls: usize, lowering: Lowering) -> (Vec<usize>, usize, usize) {
    let ctrl: Vec<usize> = (0..controls).collect();
    let free = match lowering {
        Lowering::Direct | Lowering::NoWork => 0,
        Lowering::Ladder => controls.saturating_sub(2),
        Lowering::Split => 1,
    };
    (ctrl, controls, controls + 1 + free)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Classical action of X/CNOT/Toffoli gates on a bit vector.
    fn run_classical(gates: &[Gate], bits: &mut [bool]) {
        for g in gates {
            match *g {
                Gate::X(t) => bits[t] ^= true,
                Gate::Cnot { control, target } => bits[target] ^= bits[control],
                Gate::Toffoli { c1, c2, target } => bits[target] ^= bits[c1] && bits[c2],
                ref other => panic!("non-classical gate {other:?}"),
            }
        }
    }

    fn check_mcx(t: usize, work: usize) {
        let controls: Vec<usize> = (0..t).collect();
        let target = t;
        let wq: Vec<usize> = (t + 1..t + 1 + work).collect();
        let gates = decompose_mcx(&controls, target, &wq).unwrap();
        let width = t + 1 + work;
        for v in 0u32..1 << width {
            let mut bits: Vec<bool> = (0..width).map(|i| v >> i & 1 == 1).collect();
            let before = bits.clone();
            run_classical(&gates, &mut bits);
            let fire = controls.iter().all(|&c| before[c]);
            for q in 0..width {
                let expect = if q == target {
                    before[q] ^ fire
                } else {
                    before[q]
                };
                assert_eq!(bits[q], expect, "t={t} work={work} input={v:b} qubit {q}");
            }
        }
    }

    #[test]
    fn degenerate_arities() {
        assert_eq!(
            decompose_mcx(&[0], 1, &[]).unwrap(),
            vec![Gate::Cnot {
                control: 0,
                target: 1
            }]
        );
        assert_eq!(
            decompose_mcx(&[0, 1], 2, &[]).unwrap(),
            vec![Gate::Toffoli {
                c1: 0,
                c2: 1,
                target: 2
            }]
        );
    }

    #[test]
    fn ladder_is_exact_with_dirty_work() {
        for t in 3..=6 {
            check_mcx(t, t - 2);
            let n = decompose_mcx(
                &(0..t).collect::<Vec<_>>(),
                t,
                &(t + 1..2 * t - 1).collect::<Vec<_>>(),
            )
            .unwrap()
            .len();
            assert_eq!(n, 4 * (t - 2));
        }
    }

    #[test]
    fn split_is_exact_with_one_dirty_qubit() {
        for t in 3..=7 {
            check_mcx(t, 1);
        }
    }

    #[test]
    fn five_controls_three_work_matches_permutation() {
        check_mcx(5, 3);
    }

    #[test]
    fn insufficient_work_reports_requirement() {
        let err = decompose_mcx(&[0, 1, 2], 3, &[]).unwrap_err();
        assert_eq!(
            err,
            Error::InsufficientWorkQubits {
                controls: 3,
                required: 1,
                available: 0
            }
        );
    }

    #[test]
    fn toffoli_counts() {
        let g = decompose_toffoli(0, 1, 2);
        let cx = g
            .iter()
            .filter(|e| matches!(e, Elementary::Cnot { .. }))
            .count();
        assert_eq!((cx, g.len() - cx), (6, 10));
    }

    #[test]
    fn split_growth_is_linear() {
        let count = |t: usize| {
            decompose_mcx(&(0..t).collect::<Vec<_>>(), t, &[t + 1])
                .unwrap()
                .len()
        };
        let (a, b) = (count(100), count(200));
        assert!((b as f64 / a as f64 - 2.0).abs() < 0.1, "{a} {b}");
    }
}
