import math, pytest, numpy
from dataclasses import replace
import pydqc.core.geometry as geometry
import pydqc.core.pipeline as pipeline
import pydqc.core.parity as parity
import pydqc.core.estimators as estimators
import pydqc.core.montecarlo as montecarlo
import pydqc.core.process as process
from pydqc.core.parity import PauliLabel as P

testTrials = 100000
testSigmas = 4

def protocols(func):
    """Use this function as a decorator for other tests.
    Its purpose is to contain the four named protocols and wrap tests with them.
    """
    def testConfigurations():
        for name in ("Plain","Basic","Medium","Refined"):
            func(pipeline.GhzProtocol.named(name))
    return testConfigurations

def distances(func):
    """Use this function as a decorator for other tests that run over a range of distances."""
    def testConfigurations():
        for d in (1,2,3,5,8,13,50):
            func(d)
    return testConfigurations

def typeI(d,protocol="Plain",p_link=0.5,p_distill=0.5,p_parity=1.0,**kwargs):
    probs = pipeline.PipelineProbabilities(p_link,p_distill,p_parity)
    return estimators.ArchitectureSpec("TypeI",d,probs,protocol=pipeline.GhzProtocol.named(protocol),**kwargs)

#----------------------------------End Decorator Functions-------------------------------------------

def testToricCounts():
    assert geometry.toric_counts(1) == geometry.CodeCounts(2,2,1,1,0)
    counts = geometry.toric_counts(2)
    assert (counts.data_qubits,counts.x_stabilizers,counts.z_stabilizers,counts.independent_checks) == (8,4,4,6)
    assert geometry.toric_counts(5).data_qubits == 50
    assert geometry.toric_counts(5).logical_qubits == 2
    with pytest.raises(geometry.DistanceError):
        geometry.toric_counts(0)

def testPlanarCounts():
    assert geometry.planar_counts(1) == geometry.CodeCounts(1,1,0,0,0)
    assert geometry.planar_counts(3).data_qubits == 9
    assert geometry.planar_counts(3).independent_checks == 8
    assert geometry.planar_counts(5).asDict()["independent_checks"] == 24
    with pytest.raises(geometry.LayoutError):
        geometry.planar_counts(4)
    for bad in (0,-3,2.5,"3",True):
        with pytest.raises(geometry.DistanceError):
            geometry.planar_counts(bad)

@distances
def testGeometryInvariants(d):
    toric = geometry.toric_counts(d)
    assert toric.independent_checks == toric.x_stabilizers+toric.z_stabilizers-2
    if d%2 == 1:
        planar = geometry.planar_counts(d)
        assert planar.data_qubits-planar.logical_qubits == planar.independent_checks
        assert planar.x_stabilizers+planar.z_stabilizers == planar.independent_checks
    assert geometry.seam_qubit_count(d)%2 == 1
    assert geometry.seam_qubit_count(d+1) > geometry.seam_qubit_count(d)
    assert geometry.ghz_states_per_round(d) == 2*d*d
    assert geometry.ghz_states_per_round(d,True) == 2*(d*d-1)

def testSeamCount():
    assert [geometry.seam_qubit_count(d) for d in (1,3,10)] == [1,5,19]
    assert geometry.transversal_pairs(5) == 25

#---------------------------------------Pipeline-----------------------------------------------------

def testProtocols():
    assert pipeline.bell_pairs_per_accepted_ghz(pipeline.GhzProtocol.named("Plain")) == 6
    assert pipeline.bell_pairs_per_accepted_ghz(pipeline.GhzProtocol.named("refined")) == 80
    assert pipeline.bell_pairs_per_accepted_ghz(pipeline.GhzProtocol.custom(1)) == 2
    with pytest.raises(pipeline.ProtocolError):
        pipeline.GhzProtocol.named("Deluxe")
    with pytest.raises(pipeline.ProtocolError):
        pipeline.GhzProtocol.custom(0)
    with pytest.raises(pipeline.ProtocolError):
        pipeline.GhzProtocol("Basic",10,True)
    custom = pipeline.getProtocol({"name":"Custom","bell_pairs_per_copy":6,"uses_distillation":True})
    assert pipeline.getProtocol(custom.asConfig()) == custom
    assert pipeline.getProtocol("Medium").asConfig() == "Medium"

def testProtocolCosts():
    probs = pipeline.PipelineProbabilities(0.5,0.5,1.0)
    costs = {name:pipeline.expected_attempts_per_ghz(pipeline.GhzProtocol.named(name),probs) for name in pipeline.namedProtocols}
    assert costs == {"Plain":12,"Basic":64,"Medium":128,"Refined":320}


def testOddDistillingProtocol():
    odd = pipeline.GhzProtocol.custom(5,uses_distillation=True)
    assert pipeline.bell_pairs_per_accepted_ghz(odd) == 10
    assert pipeline.expected_attempts_per_ghz(odd,pipeline.PipelineProbabilities(0.5,0.5,1.0)) == 40
    config = montecarlo.SimulationConfig(trials=testTrials,seed=17)
    probs = pipeline.PipelineProbabilities(0.5,0.5,0.9)
    stats = montecarlo.simulate_ghz_pipeline(odd,probs,config)
    assert stats.within(pipeline.expected_attempts_per_ghz(odd,probs),testSigmas)

def testExpectedAttemptsExamples():
    plain = pipeline.GhzProtocol.named("Plain")
    assert pipeline.expected_attempts_per_ghz(plain,pipeline.PipelineProbabilities(1,1,1)) == 6
    assert pipeline.expected_attempts_per_ghz(plain,pipeline.PipelineProbabilities(0.5,1,1)) == 12
    refined = pipeline.GhzProtocol.named("Refined")
    assert pipeline.expected_attempts_per_ghz(refined,pipeline.PipelineProbabilities(0.5,0.5,0.949089)) == pytest.approx(337.1,rel=1e-3)

@protocols
def testPipelineInvariants(protocol):
    probs = pipeline.PipelineProbabilities(0.3,0.4,0.9)
    cost = pipeline.expected_attempts_per_ghz(protocol,probs)
    assert cost > pipeline.bell_pairs_per_accepted_ghz(protocol)
    ones = pipeline.PipelineProbabilities(1,1,1)
    assert pipeline.expected_attempts_per_ghz(protocol,ones) == pipeline.bell_pairs_per_accepted_ghz(protocol)
    if not protocol.uses_distillation:
        other = pipeline.PipelineProbabilities(0.3,0.1,0.9)
        assert pipeline.expected_attempts_per_ghz(protocol,other) == cost
    doubled = pipeline.GhzProtocol.custom(2*protocol.bell_pairs_per_copy,protocol.uses_distillation)
    assert pipeline.expected_attempts_per_ghz(doubled,probs) == pytest.approx(2*cost,rel=1e-15)

def testZeroProbabilities():
    basic = pipeline.GhzProtocol.named("Basic")
    for probs in ((0,0.5,1),(0.5,0,1),(0.5,0.5,0)):
        with pytest.raises(pipeline.InfiniteExpectationError):
            pipeline.expected_attempts_per_ghz(basic,pipeline.PipelineProbabilities(*probs))
    #Plain never distills, a stored zero p_distill is irrelevant
    plain = pipeline.GhzProtocol.named("Plain")
    assert pipeline.expected_attempts_per_ghz(plain,pipeline.PipelineProbabilities(0.5,0,1)) == 12
    with pytest.raises(pipeline.ProbabilityError):
        pipeline.PipelineProbabilities(1.5)

def testDistillAndMultiplexing():
    assert pipeline.epl_distill_success(0) == 0
    assert pipeline.epl_distill_success(0.5) == 0.125
    assert pipeline.epl_distill_success(1) == 0.5
    assert pipeline.effective_link_probability(0.3,1) == 0.3
    assert pipeline.effective_link_probability(0.5,2) == 0.75
    values = [pipeline.effective_link_probability(0.1,M) for M in range(1,10)]
    assert all(b > a for a,b in zip(values,values[1:]))
    for M in (0,-1,1.5):
        with pytest.raises(ValueError):
            pipeline.effective_link_probability(0.3,M)
    assert pipeline.wall_clock_seconds(500,1000.0) == 0.5
    assert pipeline.wall_clock_seconds(500,None) is None

#---------------------------------------Parity-------------------------------------------------------

def testSymmetricSpecialValues():
    assert parity.parity_accept_probability(parity.DepolarizingRates.symmetric(0)).accept_probability == 1.0
    assert parity.symmetric_accept_probability(0) == 1.0
    assert abs(parity.parity_accept_probability(parity.DepolarizingRates.symmetric(0.75)).accept_probability-0.5) <= 1e-15
    assert abs(parity.symmetric_accept_probability(0.75)-0.5) <= 1e-15
    assert parity.symmetric_accept_probability(0.01) == pytest.approx(0.949089,abs=1e-6)

def testSingleQubitFlip():
    for p in (0.0,0.1,0.3,0.75):
        for site in range(parity.numberOfSites):
            outcome = parity.parity_accept_probability(parity.DepolarizingRates.single(p,site))
            assert outcome.accept_probability == pytest.approx(1-parity.flip_probability(p),abs=1e-15)

def testUnphysicalRatesWarn():
    with pytest.warns(UserWarning):
        rates = parity.DepolarizingRates.symmetric(0.8)
    assert not rates.isPhysical()
    assert parity.parity_moment(rates) > 0
    with pytest.raises(ValueError):
        parity.DepolarizingRates((0.1,0.1,0.1),(0.1,0.1,0.1,0.1))

def testOracleEquivalence():
    rng = numpy.random.default_rng(2024)
    rateList = [parity.DepolarizingRates.symmetric(p) for p in (0,0.001,0.01,0.05,0.1,0.25,0.5,0.75)]
    for vector in rng.uniform(0,0.75,size=(50,8)):
        rateList.append(parity.DepolarizingRates(tuple(vector[:4]),tuple(vector[4:])))
    for rates in rateList:
        exact = parity.parity_accept_probability(rates).accept_probability
        assert abs(parity.exhaustive_parity_accept(rates)-exact) <= 1e-12

def testSignRulesAgree():
    patterns = parity.errorPatterns()
    assert patterns.shape == (4**8,8)
    assert numpy.array_equal(parity.parity_signs("zeta",patterns),parity.parity_signs("conjugation",patterns))
    assert parity.exhaustive_parity_accept(parity.DepolarizingRates.symmetric(0.2),method="conjugation") == pytest.approx(parity.symmetric_accept_probability(0.2),abs=1e-12)
    with pytest.raises(ValueError):
        parity.parity_signs("guess",patterns)

def testSeriesBound():
    assert parity.seriesCubicBound == pytest.approx(1792/27)
    assert parity.seriesBoundConstant >= parity.seriesCubicBound
    for p in (1e-4,1e-3,1e-2):
        assert abs(parity.symmetric_accept_probability(p)-parity.series_approx_accept(p)) <= parity.series_error_bound(p)

def testCnotConjugation():
    assert parity.cnot_conjugate(P.X,P.I) == (P.X,P.X)
    assert parity.cnot_conjugate(P.I,P.Z) == (P.Z,P.Z)
    assert parity.cnot_conjugate(P.Z,P.I) == (P.Z,P.I)
    assert parity.cnot_conjugate(P.I,P.X) == (P.I,P.X)
    assert parity.cnot_conjugate(P.Y,P.I) == (P.Y,P.X)
    for a in P:
        for b in P:
            assert parity.cnot_conjugate(*parity.cnot_conjugate(a,b)) == (a,b)

def testTeleportedCnotErrors():
    assert parity.teleported_cnot_error_map(P.Z) == (P.Z,P.I)
    assert parity.teleported_cnot_error_map(P.X) == (P.I,P.X)
    assert parity.teleported_cnot_error_map(P.Y) == (P.Z,P.X)
    assert parity.teleported_cnot_error_map(P.I) == (P.I,P.I)

#---------------------------------------Estimators---------------------------------------------------

def testTypeIExamples():
    spec = typeI(1,p_distill=1.0)
    assert estimators.type1_attempts_per_round(spec).expected_attempts == 24
    assert estimators.type1_attempts_per_type_round(spec).expected_attempts == 12
    assert estimators.type1_attempts_per_round(spec).ghz_states_or_bell_pairs_needed == 2
    noisy = typeI(2,symmetric_noise_p=0.01)
    expected = 8*6/(0.5*parity.symmetric_accept_probability(0.01))
    assert estimators.type1_attempts_per_round(noisy).expected_attempts == pytest.approx(expected,rel=1e-14)
    independent = typeI(1,independent_generators_only=True)
    assert estimators.type1_attempts_per_round(independent).expected_attempts == 0
    with pytest.raises(estimators.ArchitectureError):
        estimators.type1_attempts_per_round(estimators.ArchitectureSpec("TypeII",3,pipeline.PipelineProbabilities(0.5)))
    with pytest.raises(estimators.ArchitectureError):
        estimators.ArchitectureSpec("TypeI",3,pipeline.PipelineProbabilities(0.5))

@protocols
def testTypeIScaling(protocol):
    for d in (1,3,10,25):
        spec = typeI(d,protocol.name,symmetric_noise_p=0.01)
        N = estimators.type1_attempts_per_round(spec).expected_attempts
        assert estimators.type1_attempts_per_round(replace(spec,d=2*d)).expected_attempts == 4*N
        assert N == 2*estimators.type1_attempts_per_type_round(spec).expected_attempts

def testProtocolOrdering():
    for d in (1,3,7,20):
        costs = [estimators.type1_attempts_per_round(typeI(d,name,symmetric_noise_p=0.01)).expected_attempts for name in ("Plain","Basic","Medium","Refined")]
        assert costs == sorted(costs) and len(set(costs)) == 4

def testNoiseMonotone():
    grid = numpy.linspace(0,0.74,60)
    costs = [estimators.type1_attempts_per_round(typeI(5,"Basic",symmetric_noise_p=p)).expected_attempts for p in grid]
    assert all(b > a for a,b in zip(costs,costs[1:]))

def testNoiseOverridesParity():
    spec = typeI(3,p_parity=0.2,symmetric_noise_p=0.0)
    assert spec.resolvedProbabilities().p_parity == 1.0
    rates = parity.DepolarizingRates((0.01,0.02,0.0,0.05),(0.0,0.01,0.03,0.02))
    asymmetric = typeI(3,depolarizing_rates=rates)
    assert asymmetric.resolvedProbabilities().p_parity == parity.parity_accept_probability(rates).accept_probability
    with pytest.raises(estimators.ArchitectureError):
        typeI(3,symmetric_noise_p=0.01,depolarizing_rates=rates)
    swapped = typeI(3,depolarizing_rates=parity.DepolarizingRates(rates.p_B,rates.p_A))
    assert swapped != asymmetric
    assert typeI(3,depolarizing_rates=parity.DepolarizingRates(rates.p_A,rates.p_B)) == asymmetric
    assert len({asymmetric,swapped,typeI(3)}) == 3

def testTypeII():
    assert estimators.type2_attempts_per_type_round(1,1).expected_attempts == 1
    assert estimators.type2_attempts_per_type_round(3,0.5).expected_attempts == 10
    assert estimators.type2_attempts_per_type_round(25,0.1).expected_attempts == pytest.approx(490)
    assert estimators.type2_attempts_per_type_round(3,0.5).ghz_states_or_bell_pairs_needed == 5
    for p_link in (0.5,0.25,1.0):
        costs = [estimators.type2_attempts_per_type_round(d,p_link).expected_attempts for d in range(1,30)]
        assert all(b-a == 2/p_link for a,b in zip(costs,costs[1:]))
    with pytest.raises(pipeline.InfiniteExpectationError):
        estimators.type2_attempts_per_type_round(3,0)

def testTypeIII():
    def spec(d,p_link,mode="TransversalCnot",**kwargs):
        return estimators.ArchitectureSpec("TypeIII",d,pipeline.PipelineProbabilities(p_link),type3_mode=mode,**kwargs)
    assert estimators.type3_attempts(spec(1,1)).expected_attempts == 1
    assert estimators.type3_attempts(spec(5,0.5)).expected_attempts == 50
    assert estimators.type3_attempts(spec(5,0.5,"Teleportation")).expected_attempts == 50
    surgery = estimators.type3_attempts(spec(3,0.5,"LatticeSurgery"))
    assert surgery.expected_attempts == 30
    assert "modeling choice" in surgery.formula_tag
    for d in (1,2,7,30):
        assert estimators.type3_attempts(spec(2*d,0.3)).expected_attempts == 4*estimators.type3_attempts(spec(d,0.3)).expected_attempts
    #multiplexing substitutes the effective link probability
    assert estimators.type3_attempts(spec(2,0.5,multiplex_M=2)).expected_attempts == pytest.approx(4/0.75)
    assert estimators.type3_attempts(spec(2,0.5,attempt_rate=8.0)).wall_clock_seconds == 1.0
    with pytest.raises(estimators.ArchitectureError):
        spec(3,0.5,"Braiding")

#---------------------------------------Monte Carlo--------------------------------------------------

def testDeterministicPipeline():
    config = montecarlo.SimulationConfig(trials=1000,seed=1)
    stats = montecarlo.simulate_ghz_pipeline(pipeline.GhzProtocol.named("Plain"),pipeline.PipelineProbabilities(1,1,1),config)
    assert stats.mean == 6 and stats.std_error == 0
    assert stats.ci_low == stats.ci_high == 6
    seam = montecarlo.simulate_architecture_round(estimators.ArchitectureSpec("TypeII",1,pipeline.PipelineProbabilities(1)),config)
    assert seam.mean == 1

@protocols
def testPipelineConvergence(protocol):
    config = montecarlo.SimulationConfig(trials=testTrials,seed=3)
    for p_link in (0.3,0.5):
        for p in (0.0,0.01):
            probs = pipeline.PipelineProbabilities(p_link,0.5,parity.symmetric_accept_probability(p))
            stats = montecarlo.simulate_ghz_pipeline(protocol,probs,config)
            assert stats.ci_low <= stats.mean <= stats.ci_high
            assert stats.within(pipeline.expected_attempts_per_ghz(protocol,probs),testSigmas)

def testArchitectureConvergence():
    config = montecarlo.SimulationConfig(trials=testTrials,seed=5)
    specs = [estimators.ArchitectureSpec("TypeII",d,pipeline.PipelineProbabilities(p)) for d in (3,11) for p in (0.1,0.5)]
    specs += [estimators.ArchitectureSpec("TypeIII",d,pipeline.PipelineProbabilities(p)) for d in (3,7) for p in (0.25,0.5)]
    specs.append(estimators.ArchitectureSpec("TypeIII",3,pipeline.PipelineProbabilities(0.5),type3_mode="LatticeSurgery"))
    specs.append(typeI(2,symmetric_noise_p=0.01))
    specs.append(typeI(2,"Basic",multiplex_M=3))
    for spec in specs:
        stats = montecarlo.simulate_architecture_round(spec,config)
        assert stats.within(estimators.analytic_round_attempts(spec),testSigmas), spec

def testSingleLink():
    config = montecarlo.SimulationConfig(trials=testTrials,seed=9)
    for q in (0.1,0.5,0.9):
        assert montecarlo.simulate_link(q,config).within(1/q,testSigmas)
    assert montecarlo.simulate_link(1,config).mean == 1
    with pytest.raises(pipeline.InfiniteExpectationError):
        montecarlo.simulate_link(0,config)

def testEmptyRound():
    config = montecarlo.SimulationConfig(trials=10,seed=0)
    stats = montecarlo.simulate_architecture_round(typeI(1,independent_generators_only=True),config)
    assert stats.mean == 0 and stats.trials == 10

def testParitySampling():
    config = montecarlo.SimulationConfig(trials=200000,seed=13)
    assert montecarlo.sample_parity_projection(parity.DepolarizingRates.symmetric(0),config) == 1.0
    for p in (0.05,0.75):
        exact = parity.symmetric_accept_probability(p)
        estimate = montecarlo.sample_parity_projection(parity.DepolarizingRates.symmetric(p),config)
        assert abs(estimate-exact) <= testSigmas*math.sqrt(exact*(1-exact)/config.trials)

def testDeterminism():
    protocol = pipeline.GhzProtocol.named("Medium")
    probs = pipeline.PipelineProbabilities(0.4,0.6,0.9)
    serial = montecarlo.SimulationConfig(trials=20000,seed=42,block_size=1500)
    pooled = montecarlo.SimulationConfig(trials=20000,seed=42,block_size=1500,workers=3)
    assert montecarlo.simulate_ghz_pipeline(protocol,probs,serial) == montecarlo.simulate_ghz_pipeline(protocol,probs,pooled)
    assert montecarlo.simulate_ghz_pipeline(protocol,probs,serial) == montecarlo.simulate_ghz_pipeline(protocol,probs,serial)
    other = montecarlo.SimulationConfig(trials=20000,seed=43,block_size=1500)
    assert montecarlo.simulate_ghz_pipeline(protocol,probs,serial) != montecarlo.simulate_ghz_pipeline(protocol,probs,other)

def testSimulationConfig():
    for kwargs in ({"trials":0},{"trials":10,"seed":-1},{"trials":10,"seed":2**64},{"trials":10,"confidence_level":1.0},{"trials":10,"workers":0}):
        with pytest.raises(ValueError):
            montecarlo.SimulationConfig(**kwargs)
    stats = montecarlo.summarize([1,2,3,4],0.95)
    assert stats.mean == 2.5
    assert stats.std_error == pytest.approx(math.sqrt(5/3/4))
    assert stats.ci_high-stats.mean == pytest.approx(1.959963984540054*stats.std_error)
    assert montecarlo.summarize([7]).std_error == 0

def testBlocks():
    assert process.getBlockBoundaries(10,4) == [(0,0,4),(1,4,4),(2,8,2)]
    groups = process.splitBlocks(process.getBlockBoundaries(10,1),3)
    assert [block for group in groups for block in group] == process.getBlockBoundaries(10,1)
    assert process.runBlocks(lambda block: block[2],process.getBlockBoundaries(10,4)) == [4,4,2]
