# apps/cargas/serializers/read.py
"""
Serializers de SALIDA: informe JSON de una ejecución y filas del benchmark.
"""

from rest_framework import serializers

MODOS = ("det", "rand")


# ============================================================================
# INFORME DE EJECUCIÓN
# ============================================================================


class ReporteEjecucionSerializer(serializers.Serializer):
    """
    {params, stats, final_cover_cost, tight_set_count, audit?, ratio?}

    Todos los tiempos viven dentro de stats.timing; el resto del informe es
    idéntico entre dos ejecuciones con la misma traza, modo y semilla.
    """

    params = serializers.DictField()
    stats = serializers.DictField()
    final_cover_cost = serializers.FloatField()
    tight_set_count = serializers.IntegerField(min_value=0)
    audit = serializers.DictField(required=False)
    ratio = serializers.FloatField(required=False)

    def validate_stats(self, value):
        if "timing" not in value:
            raise serializers.ValidationError("stats debe incluir timing")
        return value


# ============================================================================
# FILA DE BENCHMARK
# ============================================================================


class FilaBenchSerializer(serializers.Serializer):
    f = serializers.IntegerField(min_value=1)
    m = serializers.IntegerField(min_value=1)
    n_live_max = serializers.IntegerField(min_value=0)
    mode = serializers.ChoiceField(choices=MODOS)
    seed = serializers.IntegerField(min_value=0)
    total_updates = serializers.IntegerField(min_value=0)
    wall_ns_total = serializers.IntegerField(min_value=0)
    amortized_ns_per_update = serializers.FloatField(min_value=0)
    rebuild_count = serializers.IntegerField(min_value=0)
    max_rebuild_k = serializers.IntegerField(min_value=-1)
    cover_cost_final = serializers.FloatField(min_value=0)
    opt_cost = serializers.FloatField(required=False, allow_null=True)
    ratio = serializers.FloatField(required=False, allow_null=True)

    def validate(self, data):
        """amortized_ns_per_update = wall_ns_total / total_updates"""
        total = data["total_updates"]
        esperado = data["wall_ns_total"] / total if total else 0.0
        if abs(data["amortized_ns_per_update"] - esperado) > 1e-9 * max(1.0, esperado):
            raise serializers.ValidationError(
                {"amortized_ns_per_update": f"{data['amortized_ns_per_update']} ≠ {esperado}"}
            )
        return data
