# 복소 행렬 선형대수 커널 모듈
