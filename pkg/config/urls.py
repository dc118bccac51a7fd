# config/urls.py
# Sin endpoints HTTP: la superficie del proyecto son los comandos dsc_*.
urlpatterns = []
