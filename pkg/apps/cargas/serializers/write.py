# apps/cargas/serializers/write.py
"""
Serializers de ENTRADA: parámetros de una traza y opciones del generador.

No hay modelos: son serializers.Serializer puros que validan y normalizan
lo que llega desde el archivo de traza o desde la línea de comandos.
"""

from decimal import Decimal

from rest_framework import serializers

KINDS = ("random", "window", "churn")
U64_MAX = 2**64 - 1


# ============================================================================
# PARÁMETROS DE TRAZA
# ============================================================================


class ParametrosTrazaSerializer(serializers.Serializer):
    """Línea `params epsilon=<dec> C=<int> f=<int> capacity=<int>`"""

    epsilon = serializers.DecimalField(max_digits=20, decimal_places=12, max_value=Decimal("1"))
    C = serializers.IntegerField(min_value=1)
    f = serializers.IntegerField(min_value=1)
    capacity = serializers.IntegerField(min_value=1)

    def validate_epsilon(self, value):
        if value <= 0:
            raise serializers.ValidationError("epsilon debe ser mayor que 0")
        return value


# ============================================================================
# OPCIONES DEL GENERADOR
# ============================================================================


class OpcionesGeneradorSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=KINDS)
    sets = serializers.IntegerField(min_value=1)
    freq = serializers.IntegerField(min_value=1)
    updates = serializers.IntegerField(min_value=0)
    epsilon = serializers.DecimalField(
        max_digits=20, decimal_places=12, max_value=Decimal("1"), default=Decimal("0.2")
    )
    cost_ratio = serializers.IntegerField(min_value=1, default=1)
    capacity = serializers.IntegerField(min_value=1)
    window = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(min_value=0, max_value=U64_MAX, default=0)
    fixed_frequency = serializers.BooleanField(default=False)

    def validate_epsilon(self, value):
        if value <= 0:
            raise serializers.ValidationError("epsilon debe ser mayor que 0")
        return value

    def validate(self, data):
        if data["freq"] > data["sets"]:
            raise serializers.ValidationError(
                {"freq": f"f={data['freq']} no puede superar el número de conjuntos ({data['sets']})"}
            )
        ventana = data.get("window")
        if ventana is not None and ventana > data["capacity"]:
            raise serializers.ValidationError(
                {"window": f"La ventana {ventana} supera la capacidad {data['capacity']}"}
            )
        return data
