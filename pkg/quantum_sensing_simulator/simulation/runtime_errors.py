from dataclasses import dataclass


@dataclass
class PipelineExecutionException(RuntimeError):
    stage: str
    scenario_repr: str
    error_message: str

    def __repr__(self):
        return f"There was an error in the '{self.stage}' stage of the pipeline '{self.scenario_repr}':\n{self.error_message}"
