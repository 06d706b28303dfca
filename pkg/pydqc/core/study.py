import time
from dataclasses import replace
import pydqc.core.io as io
import pydqc.core.process as process
import pydqc.core.estimators as estimators
import pydqc.core.montecarlo as montecarlo
import pydqc.core.sweep as sweep
import pydqc.utils.generateInput as generateInput
import pydqc.utils.validate as validate

class Study(object):
    """A configured estimation study: one architecture point, an optional sweep and Monte Carlo settings."""
    def __init__(self, yamlFileName=None, config=None, overrides=(), recipe=None, verbose=False):
        super(Study, self).__init__()
        self.moments = [time.time(),]
        process.setupCommunicators(self)
        self.verbose = verbose
        self.yamlFileName = yamlFileName
        fileConfig = io.loadConfig(yamlFileName) if yamlFileName is not None else {}
        if config is not None:
            fileConfig = generateInput.mergeConfig(fileConfig,config)
        recipe = recipe if recipe is not None else (fileConfig.get("sweep") or {}).get("recipe")
        self.recipe = recipe
        if recipe is not None:
            try:
                base = generateInput.recipeConfig(recipe)
            except ValueError as e:
                raise io.ConfigError("recipe",str(e))
            fileConfig = generateInput.mergeConfig(base,fileConfig)
            fileConfig["sweep"].pop("recipe",None)
        self.yamlFile = io.applyOverrides(fileConfig,overrides)
        #Managing inputs
        io.yamlManager(self)

    def __str__(self):
        """Use this function to print the object."""
        return io.getStudyPrint(self)

    def withSimulation(self,trials=None,seed=None,workers=None):
        """Use this function to override the Monte Carlo settings from the command line."""
        changes = {key:value for key,value in (("trials",trials),("seed",seed),("workers",workers)) if value is not None}
        if changes:
            self.simulation = io.configField("simulation",replace,self.simulation,**changes)
        return self

    def points(self):
        """Use this function to get the specs evaluated by sweep and simulate."""
        return self.sweep.points() if self.sweep is not None else [self.spec]

    def estimate(self,spec=None):
        """Use this function to evaluate the closed form of spec (the configured point by default)."""
        spec = self.spec if spec is None else spec
        return estimators.estimate(spec,per_type=self.perType)

    def rows(self,simulate=False):
        """Use this function to build one row per point, with Monte Carlo columns when simulate is set.
        Simulated rows always report N_round for TypeI since that is the quantity simulated.
        """
        rows = []
        for spec in self.points():
            if simulate:
                statistics = montecarlo.simulate_architecture_round(spec,self.simulation)
                rows.append(sweep.makeRow(spec,estimators.estimate(spec),statistics))
            else:
                rows.append(sweep.makeRow(spec,self.estimate(spec)))
            io.verbosePrint(self,"{} d={} done".format(spec.kind,spec.d))
        return rows

    def samples(self):
        """Use this function to get (row, raw per-trial attempts) for every point."""
        points = []
        for spec in self.points():
            samples = montecarlo.sampleTrials(spec,self.simulation)
            statistics = montecarlo.summarize(samples,self.simulation.confidence_level)
            points.append((sweep.makeRow(spec,estimators.estimate(spec),statistics),samples))
        return points

    def validate(self,acceptFormula=None,monteCarlo=True):
        """Use this function to run the self checks with the configured point included."""
        return validate.validateAll(self.simulation,spec=self.spec,acceptFormula=acceptFormula,monteCarlo=monteCarlo)

    def resolvedConfig(self):
        return io.resolvedConfig(self)

    def elapsed(self):
        self.moments.append(time.time())
        return self.moments[-1]-self.moments[0]
