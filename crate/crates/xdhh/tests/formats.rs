use std::fs;

use xdhh::instance::{self, DomainId, Generator, Instance};
use xdhh_core::algorithms::by_name;
use xdhh_core::{run, BudgetMode};

#[test]
fn file_stem_names_every_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let gens = [
        Generator::Maxsat { vars: 12, ratio: 3.0, seed: 5 },
        Generator::Binpacking { pieces: 12, capacity: 100, dist: instance::PieceDistribution::Uniform, seed: 5 },
        Generator::Flowshop { jobs: 4, machines: 2, pmax: 9, seed: 5 },
        Generator::Personnel { employees: 3, days: 7, shift_types: 2, seed: 5 },
    ];
    for g in gens {
        let inst = g.generate("inner-name").unwrap();
        let path = tmp.path().join(format!("on-disk.{}", g.domain().extension()));
        fs::write(&path, inst.render()).unwrap();
        let loaded = instance::load(g.domain(), &path).unwrap();
        assert_eq!(loaded.id(), "on-disk");
        assert_eq!(loaded.domain(), g.domain());

        let mut d = loaded.new_domain();
        let r = run(by_name("ils").unwrap().as_mut(), d.as_mut(), BudgetMode::Evaluations(300), 1, None).unwrap();
        assert_eq!((r.domain.as_str(), r.instance.as_str()), (g.domain().as_str(), "on-disk"));
    }
}

#[test]
fn wrong_domain_or_missing_file() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("x.cnf");
    fs::write(&path, "p cnf 2 1\n1 -2 0\n").unwrap();
    assert!(matches!(instance::load(DomainId::Maxsat, &path).unwrap(), Instance::Maxsat { .. }));
    let err = instance::load(DomainId::Personnel, &path).unwrap_err();
    assert!(format!("{err:#}").contains("as personnel"));
    assert!(instance::load(DomainId::Flowshop, &tmp.path().join("nope.fsp")).is_err());
}

#[test]
fn multi_instance_taillard_file_must_be_split() {
    let block = "number of jobs, number of machines, initial seed, upper bound and lower bound :\n\
                 2 2 1 1 1\nprocessing times :\n1 2\n3 4\n";
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("ta.txt");
    fs::write(&path, block.repeat(2)).unwrap();
    assert!(format!("{:#}", instance::load(DomainId::Flowshop, &path).unwrap_err()).contains("convert"));
    fs::write(&path, block).unwrap();
    let Instance::Flowshop(f) = instance::load(DomainId::Flowshop, &path).unwrap() else { panic!() };
    assert_eq!(f.row(0), &[1, 3]);
}
