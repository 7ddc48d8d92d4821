from rest_framework import serializers
from rest_framework.renderers import JSONRenderer


class OdeSystemSerializer(serializers.Serializer):
    """Serializer para sistemas de EDOs (lados direitos em texto)"""
    name = serializers.CharField()
    rhs = serializers.SerializerMethodField()
    matches_reference = serializers.BooleanField(required=False, allow_null=True)

    def get_rhs(self, obj):
        return obj['system'].to_dict()


class CheckResultSerializer(serializers.Serializer):
    """Serializer para o veredito de uma verificação"""
    suite = serializers.CharField()
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)
    residual = serializers.CharField(allow_blank=True)


class VerificationSerializer(serializers.Serializer):
    passed = serializers.BooleanField()
    results = CheckResultSerializer(many=True)


class LimitReportSerializer(serializers.Serializer):
    """Serializer para os limites na raiz r = 1"""
    alpha = serializers.FloatField()
    A1 = serializers.FloatField()
    abs_dA1 = serializers.FloatField()
    dB = serializers.FloatField()
    dC = serializers.FloatField()
    A2_plus_A3 = serializers.FloatField()
    dA2_minus_dA3 = serializers.FloatField()
    A2_at_root = serializers.FloatField()
    A3_at_root = serializers.FloatField()
    passed = serializers.BooleanField()


class ClosureRowSerializer(serializers.Serializer):
    r = serializers.FloatField()
    phi = serializers.FloatField()
    omega1 = serializers.FloatField()
    omega2 = serializers.FloatField()
    omega3 = serializers.FloatField()


class HolonomyEvidenceSerializer(serializers.Serializer):
    """Serializer para a evidência de holonomia de um membro da família"""
    alpha = serializers.FloatField()
    label = serializers.CharField()
    maxima = serializers.DictField(child=serializers.FloatField())
    per_r = ClosureRowSerializer(many=True)


class FamilySummarySerializer(serializers.Serializer):
    """Resumo JSON do comando family, por alpha"""
    alpha = serializers.FloatField()
    samples = serializers.IntegerField()
    max_residual = serializers.FloatField()
    max_residual_extended = serializers.FloatField()
    passed = serializers.BooleanField()
    limits = LimitReportSerializer(allow_null=True)
    holonomy = HolonomyEvidenceSerializer(allow_null=True)


class DriftReportSerializer(serializers.Serializer):
    bc_difference_drift = serializers.FloatField()
    ansatz_sum_drift = serializers.FloatField(allow_null=True)
    a_sum_drift = serializers.FloatField(allow_null=True)
    sign_ok = serializers.BooleanField()


class TrajectoryDiagnosticsSerializer(serializers.Serializer):
    samples = serializers.IntegerField()
    accepted = serializers.IntegerField()
    rejected = serializers.IntegerField()
    max_error = serializers.FloatField()
    status = serializers.CharField()
    message = serializers.CharField(allow_blank=True)


class IntegrationReportSerializer(serializers.Serializer):
    """Serializer para o relatório do comando integrate"""
    system = serializers.CharField()
    initial = serializers.ListField(child=serializers.FloatField())
    final = serializers.ListField(child=serializers.FloatField())
    diagnostics = TrajectoryDiagnosticsSerializer()
    drift = DriftReportSerializer()


class AlcStatisticsSerializer(serializers.Serializer):
    """Estatísticas de estabilização do coeficiente limitado no comando explore_alc"""
    a = serializers.FloatField()
    b = serializers.FloatField()
    t_end = serializers.FloatField()
    reached_t_end = serializers.BooleanField()
    bounded = serializers.ChoiceField(choices=['A1', 'A2', 'A3'])
    bounded_final = serializers.FloatField()
    bounded_window_start = serializers.FloatField()
    bounded_relative_change = serializers.FloatField()
    max_abs_bounded = serializers.FloatField()
    min_growth = serializers.FloatField()
    alc_like = serializers.BooleanField()
    window = serializers.ListField(child=serializers.FloatField())
    diagnostics = TrajectoryDiagnosticsSerializer()


def render_json(data) -> str:
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')
