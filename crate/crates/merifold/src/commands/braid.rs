use merifold_core::braidspace::{BraidSpaceGroup, BraidWord, C1Verdict, PeripheralClass};
use merifold_core::satellites::{BraidSide, PatternSide};
use merifold_core::{Error, Result};
use serde_json::{json, Value};

use super::{pair, words_json};
use crate::cli::{BraidOp, SpaceArgs};
use crate::report::RunReport;

pub fn space(args: &SpaceArgs) -> Result<BraidSpaceGroup> {
    match (&args.cable, &args.braid) {
        (Some(c), None) => {
            let (n, m) = pair(c)?;
            BraidSpaceGroup::cable(n, m)
        }
        (None, Some(b)) => {
            let n = args.n.ok_or_else(|| Error::precondition("--braid needs -n"))?;
            BraidSpaceGroup::artin(&BraidWord::parse(b, n)?)
        }
        _ => Err(Error::precondition("give exactly one of --cable n,m and --braid WORD")),
    }
}

pub fn braid(op: &BraidOp) -> Result<RunReport> {
    Ok(match op {
        BraidOp::Action { braid, n } => {
            let beta = BraidWord::parse(braid, *n)?;
            let g = BraidSpaceGroup::artin(&beta)?;
            let images = g.action_images();
            let lines = images.iter().enumerate().map(|(i, w)| format!("x{} -> {w}", i + 1)).collect();
            RunReport::ok(
                json!({ "braid": beta.to_string(), "strands": n, "images": words_json(images) }),
                lines,
            )
        }
        BraidOp::C1 { space: s, conjugators } => {
            let side = BraidSide::new(space(s)?);
            let conj = conjugators.iter().map(|c| side.parse(c)).collect::<Result<Vec<_>>>()?;
            let report = side.group().verify_c1(&conj)?;
            let verdict: Value = match &report.verdict {
                C1Verdict::FullFiber { witnesses } => json!({ "fullFiber": words_json(witnesses) }),
                C1Verdict::Basis { basis, peripheral } => {
                    let basis: Vec<_> = basis
                        .iter()
                        .map(|b| json!({ "conjugator": b.conjugator.to_string(), "index": b.index, "vertex": b.vertex }))
                        .collect();
                    let table: Vec<_> = peripheral
                        .iter()
                        .map(|p| {
                            let class = match p.class {
                                PeripheralClass::Trivial => json!("trivial"),
                                PeripheralClass::Meridian { basis_position } => json!({ "meridian": basis_position }),
                            };
                            json!({ "vertex": p.vertex, "index": p.index, "class": class })
                        })
                        .collect();
                    json!({ "basis": basis, "peripheral": table })
                }
            };
            RunReport::ok(
                json!({
                    "generators": words_json(&report.generators),
                    "rank": report.rank,
                    "basisSize": report.basis_size(),
                    "verdict": verdict,
                }),
                vec![format!("rank {}, basis size {}", report.rank, report.basis_size())],
            )
        }
        BraidOp::Centralizer { space: s, element } => {
            let side = BraidSide::new(space(s)?);
            let g = side.parse(element)?;
            let group = side.group();
            let commutes = group.centralizer_of_meridian(&g)?;
            let pushed = group.push_into_fiber(&g, 1);
            RunReport::ok(
                json!({ "element": side.show(&g), "commutes": commutes, "pushed": pushed.to_string() }),
                vec![format!("commutes with x1: {commutes}"), format!("g x1 g^-1 = {pushed}")],
            )
        }
    })
}
