use containerlaws::cli::{doc_of_structure, parse_document, structure_of, Env, Structure};
use containerlaws::compose::{check_compatible, composite_from_law, law_from_composite};
use containerlaws::kernel::{rank_dep_map, rank_uniform, unrank_dep_map, unrank_uniform, FamilySpace};
use containerlaws::laws::{beck_oracle, check_law};
use containerlaws::monadic::{check_monadic, monad_laws_oracle, MonadicContainer};
use containerlaws::zoo::{self, FunctionalAction, MatchingPair, Monoid};
use proptest::prelude::*;
use proptest::sample::select;

fn small_monads() -> Vec<MonadicContainer> {
    vec![
        zoo::exception(1),
        zoo::exception(2),
        zoo::maybe(),
        zoo::writer(&Monoid::cyclic(2)),
        zoo::writer(&Monoid::cyclic(3)),
        zoo::writer(&Monoid::and()),
        zoo::reader(2),
    ]
}

fn tables(m: &MonadicContainer) -> (Vec<Option<u32>>, Vec<Vec<(u32, u32)>>) {
    let n = m.families().total();
    let sigma = (0..n).map(|i| m.sigma_row(i)).collect();
    let pr = (0..n).map(|i| m.pr_row(i).to_vec()).collect();
    (sigma, pr)
}

fn two_element_monoids() -> impl Strategy<Value = (Monoid, Monoid)> {
    let all = Monoid::all(2);
    (select(all.clone()), select(all))
}

proptest! {
    #[test]
    fn dep_map_rank_round_trips(sizes in prop::collection::vec(1u32..5, 0..6), seed: u64) {
        let total: u64 = sizes.iter().map(|&n| u64::from(n)).product();
        let t = unrank_dep_map(&sizes, seed % total).unwrap();
        prop_assert_eq!(t.sizes(), &sizes[..]);
        prop_assert!(t.entries().iter().zip(&sizes).all(|(e, n)| e < n));
        prop_assert_eq!(rank_dep_map(&t).unwrap(), seed % total);
    }

    #[test]
    fn uniform_rank_round_trips(entries in prop::collection::vec(0u32..4, 0..10)) {
        let r = rank_uniform(&entries, 4);
        prop_assert_eq!(unrank_uniform(r, 4, entries.len()), entries);
    }

    #[test]
    fn family_index_round_trips(dims in prop::collection::vec(0u32..4, 1..5), radix in 1u32..4, seed: u64) {
        let fam = FamilySpace::new(&dims, radix).unwrap();
        let i = seed % fam.total();
        let (s, f) = fam.decode(i);
        prop_assert_eq!(fam.index(s, &f), i);
        prop_assert_eq!(f.len() as u32, dims[s as usize]);
    }

    /// Mutating one `pr` entry: the equations fail exactly when the monad
    /// laws fail on small sets.
    #[test]
    fn equations_agree_with_monad_laws(m in select(small_monads()), row: u64, col: usize, a: u32, b: u32) {
        let (sigma, mut pr) = tables(&m);
        let row = (row % pr.len() as u64) as usize;
        prop_assume!(!pr[row].is_empty());
        let (s, f) = m.families().decode(row as u64);
        let c = m.base();
        let col = col % pr[row].len();
        let a = a % c.pos(s);
        let fa = f[a as usize];
        prop_assume!(c.pos(fa) > 0);
        pr[row][col] = (a, b % c.pos(fa));
        let Ok(mutant) = MonadicContainer::from_tables(c.clone(), m.iota(), sigma, pr) else {
            return Ok(());
        };
        let eqs = check_monadic(&mutant).is_verified();
        let oracle = monad_laws_oracle(&mutant, &[0, 1, 2]).unwrap().is_verified();
        prop_assert_eq!(eqs, oracle);
    }

    #[test]
    fn sigma_mutations_agree_with_monad_laws(m in select(small_monads()), row: u64, t: u32) {
        let (mut sigma, pr) = tables(&m);
        let row = (row % sigma.len() as u64) as usize;
        let c = m.base();
        let old = sigma[row].unwrap();
        let t = t % c.shape_count();
        prop_assume!(c.pos(t) == c.pos(old));
        sigma[row] = Some(t);
        let mutant = MonadicContainer::from_tables(c.clone(), m.iota(), sigma, pr).unwrap();
        let eqs = check_monadic(&mutant).is_verified();
        let oracle = monad_laws_oracle(&mutant, &[0, 1, 2]).unwrap().is_verified();
        prop_assert_eq!(eqs, oracle);
    }

    /// Random action tables: the law equations hold exactly when the Beck
    /// diagrams commute.
    #[test]
    fn matching_pair_laws_agree_with_beck((a, b) in two_element_monoids(), alpha in prop::collection::vec(0u32..2, 4), beta in prop::collection::vec(0u32..2, 4)) {
        let checked = MatchingPair::new(a.clone(), b.clone(), alpha.clone(), beta.clone());
        let mp = MatchingPair::unchecked(a, b, alpha, beta).unwrap();
        let law = zoo::law_from_matching_pair(&mp).unwrap();
        let eqs = check_law(&law).is_verified();
        prop_assert_eq!(eqs, beck_oracle(&law, &[0, 1, 2]).unwrap().is_verified());
        prop_assert_eq!(eqs, checked.is_ok());
        if eqs {
            prop_assert_eq!(zoo::matching_pair_from_law(&law).unwrap(), mp.clone());
            let dm = zoo::dir_mnd_law_from_matching_pair(&mp).unwrap();
            prop_assert!(check_law(&dm).is_verified());
            prop_assert_eq!(zoo::matching_pair_from_dir_mnd_law(&dm).unwrap(), mp.clone());
            let cc = composite_from_law(&law).unwrap();
            prop_assert!(check_compatible(&cc).is_verified());
            prop_assert!(monad_laws_oracle(cc.monadic(), &[0, 1, 2]).unwrap().is_verified());
            prop_assert_eq!(law_from_composite(&cc).unwrap(), law);
        }
    }

    /// The four action equations decide the mixed law equations.
    #[test]
    fn functional_actions_agree_with_mixed_laws((a, b) in two_element_monoids(), alpha in prop::collection::vec(0u32..2, 8)) {
        let fa = FunctionalAction::unchecked(a, b, alpha).unwrap();
        let law = zoo::mixed_law_from_functional_action(&fa).unwrap();
        let holds = fa.first_failing_equation().is_none();
        prop_assert_eq!(holds, check_law(&law).is_verified());
        if holds {
            prop_assert_eq!(zoo::functional_action_from_mixed_law(&law).unwrap(), fa);
        }
    }

    #[test]
    fn documents_round_trip(pick in 0usize..8, n in 1u32..4) {
        let s = match pick {
            0 => Structure::Monadic(zoo::exception(n)),
            1 => Structure::Monadic(zoo::reader(n)),
            2 => Structure::Monadic(zoo::writer(&Monoid::cyclic(n))),
            3 => Structure::Monadic(zoo::list(n).unwrap()),
            4 => Structure::Directed(zoo::writer_dir(n)),
            5 => Structure::Directed(zoo::reader_dir(&Monoid::cyclic(n))),
            6 => Structure::Law(zoo::exception_law(n, zoo::writer(&Monoid::cyclic(2))).unwrap()),
            _ => Structure::Law(zoo::writer_reader_mixed_law(n, n).unwrap()),
        };
        let doc = doc_of_structure(&s);
        let text = serde_json::to_string(&doc).unwrap();
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(structure_of(&back, Env::default()).unwrap(), s);
    }
}
