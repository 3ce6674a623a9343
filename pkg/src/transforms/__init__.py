# 작용소 분해 및 변환 모듈
