mod common;

use std::collections::BTreeMap;

use hopf_g_tqft::eval::hennings::hennings_oracle;
use hopf_g_tqft::eval::link::evaluate_link;
use hopf_g_tqft::label::Label;
use hopf_g_tqft::scalar::CycScalar;
use common::unknot;
use hopf_g_tqft::tangle::diagram::{random_admissible_labels, random_diagram, Component, Event, LinkDiagram, Over};
use hopf_g_tqft::uqsl2::{Sl2, Sl2Params};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sl2(shift: i64) -> Sl2 {
    Sl2::new(Sl2Params::new(3, 2).unwrap().with_shift(shift)).unwrap()
}

fn cup(pos: usize, component: usize, left_up: bool) -> Event {
    Event::Cup { pos, component, left_up }
}


fn hopf(over: Over, second_up: bool) -> LinkDiagram {
    LinkDiagram {
        components: vec![Component { label: Label::ZERO }; 2],
        events: vec![
            cup(0, 0, true),
            cup(2, 1, second_up),
            Event::Cross { pos: 1, over },
            Event::Cross { pos: 1, over },
            Event::Cap { pos: 2 },
            Event::Cap { pos: 0 },
        ],
    }
}

fn crossings(d: &LinkDiagram) -> usize {
    d.events.iter().filter(|e| matches!(e, Event::Cross { .. })).count()
}

fn framed_unknot(f: i64) -> CycScalar {
    common::framed_unknot(&sl2(0), f)
}

#[test]
fn kinks_do_not_depend_on_rotation() {
    let h = sl2(0);
    let mut by_writhe: BTreeMap<i64, Vec<CycScalar>> = BTreeMap::new();
    for over in [Over::Left, Over::Right] {
        for up in [true, false] {
            let mut ds: Vec<LinkDiagram> = (0..2).map(|pos| unknot(up).add_curl(1, pos, over).unwrap()).collect();
            // a curl whose cup and cap both sit inside the circle
            ds.push(LinkDiagram {
                components: vec![Component { label: Label::ZERO }],
                events: vec![cup(0, 0, up), cup(1, 0, up), Event::Cross { pos: 0, over }, Event::Cap { pos: 1 }, Event::Cap { pos: 0 }],
            });
            for d in ds {
                let w = d.linking_matrix().unwrap()[0][0];
                by_writhe.entry(w).or_default().push(evaluate_link(&h, &d).unwrap());
            }
        }
    }
    for (w, values) in &by_writhe {
        assert_eq!(values.len(), 6);
        assert!(values.windows(2).all(|p| p[0] == p[1]), "writhe {w}");
    }
    assert_eq!(framed_unknot(1).conj(), framed_unknot(-1));
    assert!(evaluate_link(&h, &unknot(true)).unwrap().is_zero());
}

#[test]
fn small_diagrams_match_oracle() {
    let h = sl2(0);
    let mut ds = vec![LinkDiagram::empty(), unknot(true), unknot(true).add_curl(1, 0, Over::Left).unwrap()];
    for over in [Over::Left, Over::Right] {
        ds.push(hopf(over, true));
        ds.push(hopf(over, false));
    }
    for d in &ds {
        assert_eq!(evaluate_link(&h, d).unwrap(), hennings_oracle(3, 2, d).unwrap(), "{}", d.to_json());
    }
    for over in [Over::Left, Over::Right] {
        assert!(evaluate_link(&h, &hopf(over, true)).unwrap().is_one());
    }
    assert!(evaluate_link(&h, &LinkDiagram::empty()).unwrap().is_one());
}

#[test]
fn random_diagrams_match_oracle() {
    let h = sl2(0);
    let pool = Label::all_with_denominator(2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 8 {
        let n = rng.gen_range(1..=2);
        let d = random_diagram(&mut rng, n, 2);
        if crossings(&d) > 3 {
            continue;
        }
        let d = random_admissible_labels(&mut rng, &d, &pool, done % 2 == 0).unwrap_or(d);
        assert_eq!(evaluate_link(&h, &d).unwrap(), hennings_oracle(3, 2, &d).unwrap(), "{}", d.to_json());
        done += 1;
    }
}

#[test]
fn kirby_moves() {
    common::kirby_rounds(&sl2(0), 24, 5).unwrap();
}

#[test]
fn shifted_representatives_agree() {
    let (h0, h1) = (sl2(0), sl2(1));
    let pool = Label::all_with_denominator(2);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for it in 0..10 {
        let d = random_diagram(&mut rng, 2, 4);
        let d = random_admissible_labels(&mut rng, &d, &pool, it % 2 == 0).unwrap_or(d);
        assert_eq!(evaluate_link(&h0, &d).unwrap(), evaluate_link(&h1, &d).unwrap(), "{}", d.to_json());
    }
}
