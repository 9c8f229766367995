"""
Validation of experiment config documents.

Every nested object rejects keys it does not know. Keys that are not valid
Python identifiers in the document ("lambda", "D", "H") are added in
``get_fields`` and renamed to their config attribute names on the way in.
"""
from django.conf import settings
from rest_framework import serializers

from cada_sim.common.exceptions import ConfigError
from cada_sim.commrules.services.rules import RuleConfig
from cada_sim.dataio.services.partition import PartitionKind
from cada_sim.dataio.services.workload import ProblemConfig
from cada_sim.engine.services.config import Algorithm, ExperimentConfig
from cada_sim.engine.services.server import ServerUpdate
from cada_sim.optimizer.services.adam import DEFAULT_EPSILON, AdamConfig
from cada_sim.optimizer.services.schedules import ScheduleKind, StepSchedule
from cada_sim.problems.services.specs import DEFAULT_LAMBDA, ProblemKind


class StrictSerializer(serializers.Serializer):
    renamed_fields: dict[str, str] = {}

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ["Unknown field."] for key in unknown})
        values = super().to_internal_value(data)
        return {self.renamed_fields.get(key, key): value for key, value in values.items()}


class ProblemSerializer(StrictSerializer):
    renamed_fields = {"lambda": "lam"}

    kind = serializers.ChoiceField(choices=[k.value for k in ProblemKind], default=ProblemKind.BINARY_LOGISTIC.value)
    path = serializers.CharField(required=False, allow_null=True, default=None)
    p = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    n = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    classes = serializers.IntegerField(min_value=2, required=False, allow_null=True, default=None)
    heterogeneity = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.0)
    cond = serializers.FloatField(min_value=1.0, default=1.0)
    partition = serializers.ChoiceField(choices=[k.value for k in PartitionKind], default=PartitionKind.UNIFORM.value)
    data_seed = serializers.IntegerField(required=False, allow_null=True, default=None)

    def get_fields(self):
        fields = super().get_fields()
        fields["lambda"] = serializers.FloatField(min_value=0.0, default=DEFAULT_LAMBDA)
        return fields

    def validate(self, attrs):
        if attrs.get("path") is None and (attrs.get("p") is None or attrs.get("n") is None):
            raise serializers.ValidationError("Generated problems need both p and n.")
        return attrs


class RuleSerializer(StrictSerializer):
    renamed_fields = {"D": "max_delay"}

    c = serializers.FloatField(min_value=0.0, default=1.0)
    d_max = serializers.IntegerField(min_value=1, default=10)

    def get_fields(self):
        fields = super().get_fields()
        fields["D"] = serializers.IntegerField(min_value=1, default=100)
        return fields


class AdamSerializer(StrictSerializer):
    beta1 = serializers.FloatField(min_value=0.0, default=0.9)
    beta2 = serializers.FloatField(default=0.999)
    epsilon = serializers.FloatField(default=DEFAULT_EPSILON)

    def validate_beta2(self, value):
        if not 0.0 < value < 1.0:
            raise serializers.ValidationError("beta2 must be in (0, 1).")
        return value

    def validate_epsilon(self, value):
        if value <= 0:
            raise serializers.ValidationError("epsilon must be positive.")
        return value

    def validate(self, attrs):
        if not attrs["beta1"] ** 2 < attrs["beta2"]:
            raise serializers.ValidationError("beta1^2 must be smaller than beta2.")
        return attrs


class ScheduleSerializer(StrictSerializer):
    kind = serializers.ChoiceField(choices=[k.value for k in ScheduleKind])
    alpha = serializers.FloatField(required=False)
    eta = serializers.FloatField(required=False)
    horizon = serializers.IntegerField(min_value=1, required=False)
    mu = serializers.FloatField(required=False)
    k0 = serializers.FloatField(required=False)

    def validate(self, attrs):
        try:
            StepSchedule(**attrs)
        except ConfigError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs


class ExperimentConfigSerializer(StrictSerializer):
    renamed_fields = {"H": "averaging_interval"}

    name = serializers.CharField(default="experiment")
    problem = ProblemSerializer()
    workers = serializers.IntegerField(min_value=1)
    batch_size = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    batch_ratio = serializers.FloatField(required=False, allow_null=True, default=None)
    algorithm = serializers.CharField()
    rule = RuleSerializer(required=False)
    adam = AdamSerializer(required=False)
    schedule = ScheduleSerializer()
    rounds = serializers.IntegerField(min_value=0)
    momentum = serializers.FloatField(min_value=0.0, default=0.9)
    eval_every = serializers.IntegerField(min_value=1, default=10)
    seed = serializers.IntegerField(default=0)
    output = serializers.CharField(required=False, allow_null=True, default=None)
    checked = serializers.BooleanField(required=False)
    threads = serializers.IntegerField(min_value=1, required=False)
    server_update = serializers.ChoiceField(choices=[u.value for u in ServerUpdate], default=ServerUpdate.ADAM.value)

    def get_fields(self):
        fields = super().get_fields()
        fields["H"] = serializers.IntegerField(min_value=1, default=10)
        return fields

    def validate_algorithm(self, value):
        if value not in {a.value for a in Algorithm}:
            known = ", ".join(a.value for a in Algorithm)
            raise serializers.ValidationError(f"Unknown algorithm '{value}' (expected one of {known}).")
        return value

    def validate_batch_ratio(self, value):
        if value is not None and not 0.0 < value <= 1.0:
            raise serializers.ValidationError("batch_ratio must be in (0, 1].")
        return value

    def validate(self, attrs):
        if attrs.get("batch_size") is None and attrs.get("batch_ratio") is None:
            raise serializers.ValidationError("Set batch_size or batch_ratio.")
        try:
            self.build(attrs)
        except ConfigError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def build(self, attrs) -> ExperimentConfig:
        values = dict(attrs)
        values["problem"] = ProblemConfig(**attrs["problem"])
        values["rule"] = RuleConfig(**attrs.get("rule", {}))
        values["adam"] = AdamConfig(**attrs.get("adam", {}))
        values["schedule"] = StepSchedule(**attrs["schedule"])
        values.setdefault("checked", settings.CADA_SIM_CHECKED_MODE)
        values.setdefault("threads", settings.CADA_SIM_WORKER_THREADS)
        return ExperimentConfig(**values)

    def create(self, validated_data):
        return self.build(validated_data)
