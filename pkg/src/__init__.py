# Laboratório de transformações de Cremona
