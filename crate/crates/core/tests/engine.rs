use phe_core::ceg::CegParams;
use phe_core::cycles::OpKind;
use phe_core::dual_engine::{AnyCiphertext, Engine, EngineConfig, EngineMode, PublicKeyRef};
use phe_core::elgamal::{self, ElGamalParams};
use phe_core::rng::SeededSource;
use phe_core::{Error, Nat};

#[test]
fn layouts_agree_with_standalone_functions() {
    let group = ElGamalParams::new(251u32, 6u32);
    let (pk, sk) = elgamal::keygen(&group, &mut SeededSource::new(9)).unwrap();
    for config in [EngineConfig::regular(), EngineConfig::dual()] {
        let mut engine = Engine::new(config);
        let (epk, _) = engine.keygen_elgamal(&group, &mut SeededSource::new(9)).unwrap();
        assert_eq!(epk, pk);
        for m in 1..251u32 {
            let m = Nat::from(m);
            let want = elgamal::encrypt(&pk, &m, &mut SeededSource::new(m.bits())).unwrap();
            let got = engine
                .encrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &m, &mut SeededSource::new(m.bits()))
                .unwrap();
            assert_eq!(got, AnyCiphertext::ElGamal(want));
            let back = engine.decrypt(EngineMode::Multiplicative, PublicKeyRef::ElGamal(&pk), &sk, &got).unwrap();
            assert_eq!(back, m);
        }
    }
}

#[test]
fn select_signal_must_match_the_key() {
    let mut engine = Engine::new(EngineConfig::dual());
    let (pk, _) = engine
        .keygen_elgamal(&ElGamalParams::new(23u32, 5u32), &mut SeededSource::new(1))
        .unwrap();
    let err = engine
        .encrypt(EngineMode::Additive, PublicKeyRef::ElGamal(&pk), &Nat::from(3u8), &mut SeededSource::new(2))
        .unwrap_err();
    assert!(matches!(err, Error::InvalidParams(_)));
}

#[test]
fn additive_encryption_cost_scales_with_pairs() {
    let cost = |moduli: &[u32]| {
        let mut engine = Engine::new(EngineConfig::regular());
        let (pk, _) = engine
            .keygen_ceg(&CegParams::new(251u32, 6u32, moduli.iter().copied()), &mut SeededSource::new(4))
            .unwrap();
        engine
            .encrypt(EngineMode::Additive, PublicKeyRef::Ceg(&pk), &Nat::from(1u8), &mut SeededSource::new(5))
            .unwrap();
        engine.encrypt_ledger().total()
    };
    let one = cost(&[3]);
    assert_eq!(cost(&[3, 5]), 2 * one);
    assert_eq!(cost(&[3, 5, 7]), 3 * one);
}

#[test]
fn ledgers_break_down_by_operation() {
    let mut engine = Engine::new(EngineConfig::dual());
    let params = CegParams::new(23u32, 5u32, [3u32, 5]);
    let (pk, sk) = engine.keygen_ceg(&params, &mut SeededSource::new(1)).unwrap();
    let ct = engine
        .encrypt(EngineMode::Additive, PublicKeyRef::Ceg(&pk), &Nat::from(7u8), &mut SeededSource::new(2))
        .unwrap();
    let m = engine.decrypt(EngineMode::Additive, PublicKeyRef::Ceg(&pk), &sk, &ct).unwrap();
    assert_eq!(m, Nat::from(7u8));
    let ledger = engine.decrypt_ledger();
    let sum: u64 = ledger.breakdown().map(|(_, c)| c).sum();
    assert_eq!(sum, ledger.total());
    for kind in [OpKind::Exponentiate, OpKind::Divide, OpKind::DiscreteLog, OpKind::InverseCrt] {
        assert!(ledger.get(kind) > 0, "{kind} not charged");
    }

    engine.reset();
    assert_eq!(engine.decrypt_ledger().total(), 0);
}
