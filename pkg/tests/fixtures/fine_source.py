"""Data model classes of an integrated energy system assessment framework."""

from datadesc.markers import datadesc


@datadesc(
    IsPartOfInterface=True,
    capacityMax={
        "Dimensions": {
            "location": {"ItemMinimumValue": 0, "UnitType": "spatial identifier"},
            "time": {"ItemMinimumValue": 0, "UnitType": "temporal identifier"},
        }
    },
)
class Component:
    """The Component class includes..."""

    capacityMax = None


@datadesc(
    numberOfTimeSteps={"MinimumValue": 0, "ExclusiveMinimum": True, "Required": True},
)
class EnergySystemModel:
    numberOfTimeSteps: int = 8760

    @datadesc(
        clusterMethod={"ValueSet": ["averaging", "k_means"], "VariableRole": "input"},
    )
    def aggregateTemporally(self, clusterMethod, forecastHorizon=24):
        """Cluster the hourly input series into typical periods."""

    def removeComponent(self, componentName: str) -> Component:
        """Drop one component from the model."""

    @datadesc(
        filePath={
            "FileFormat": "NetCDF",
            "NetCDFFolders": {
                "Input Data": ["Conversion", "Storage"],
                "Parameters": ["numberOfTimeSteps", "verboseLogLevel"],
            },
        },
    )
    def readNetCDFtoEnergySystemModel(self, filePath: str):
        """Restore a stored model from a NetCDF file."""
